fn main() {
    std::process::exit(hopforders::cli::run(std::env::args_os()));
}
