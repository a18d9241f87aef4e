//! Drives the command line in-process; same as running the `gassmann` binary.

fn main() {
    let code = gassmann::cli::run([
        "gassmann", "det", "--pattern", "g384_printed.pat", "--assign", "1,1,-1,0,0,0,0,0",
    ]);
    println!("exit {code}");
    let code = gassmann::cli::run(["gassmann"]);
    println!("exit {code}");
}
