fn main() {
    std::process::exit(homform_cli::run(std::env::args_os()));
}
