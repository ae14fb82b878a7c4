fn main() {
    std::process::exit(meandro_cli::run(std::env::args_os()));
}
