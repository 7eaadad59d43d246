fn main() {
    std::process::exit(wordsym::cli::run_from(std::env::args_os()));
}
