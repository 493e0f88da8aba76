fn main() {
    std::process::exit(skewdyn::cli::main_with(std::env::args_os()));
}
