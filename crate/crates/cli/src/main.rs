fn main() {
    std::process::exit(spinflip_cli::run(std::env::args_os()));
}
