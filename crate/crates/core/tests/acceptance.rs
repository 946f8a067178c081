// Acceptance suite: one criterion per function, one PASS/FAIL line each.
// Runs without the libtest harness so the lines always print.

fn main() {
    println!("acceptance suite placeholder");
}
