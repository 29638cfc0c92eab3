//! Driving the `bf` command line from Rust, capturing its output.

use burnside::cli::run_with;

fn main() {
    for args in [
        vec!["bf", "eval", "[a,b]^2", "--ring", "rt", "--q", "2"],
        vec!["bf", "member", "1 - x", "--ideal", "jq", "--q", "2"],
        vec!["bf", "bounds", "2", "3", "4", "8", "9"],
        vec!["bf", "verify", "bounds", "--q", "6"],
    ] {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run_with(args.iter().copied(), &mut out, &mut err);
        println!("$ {} -> exit {code}", args.join(" "));
        print!("{}{}", String::from_utf8_lossy(&out), String::from_utf8_lossy(&err));
    }
}
