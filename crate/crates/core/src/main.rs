fn main() {
    std::process::exit(snorm::app::main_with_args(std::env::args_os()));
}
