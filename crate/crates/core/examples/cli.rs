//! Drives the command-line interface in process.

use real_bundles::cli::run;

fn main() {
    for args in [
        vec!["point-classes", "gl3-compact"],
        vec!["census", "gl2-conj", "--curve", "2,I,3", "--degree", "0"],
        vec!["curve", "5", "II", "2"],
        vec!["--format", "tsv", "types", "gl2-conj", "2,I,1", "--degrees", "0..1"],
    ] {
        println!("$ real-bundles {}", args.join(" "));
        let code = run(std::iter::once("real-bundles").chain(args));
        println!("exit {code}\n");
    }
}
