fn main() {
    let code = gwreath::cli::run(std::env::args_os().collect());
    std::process::exit(code);
}
