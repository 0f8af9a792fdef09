fn main() {
    std::process::exit(colorcut::run_command(std::env::args_os()));
}
