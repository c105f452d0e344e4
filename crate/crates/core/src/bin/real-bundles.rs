fn main() {
    std::process::exit(real_bundles::cli::run(std::env::args_os()));
}
