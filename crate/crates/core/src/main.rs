fn main() {
    std::process::exit(necroots::cli::main_with_args(std::env::args_os()));
}
