fn main() {
    let code = quartic::cli::run(std::env::args_os(), &mut std::io::stdout());
    std::process::exit(code);
}
