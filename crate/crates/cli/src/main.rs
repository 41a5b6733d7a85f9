fn main() {
    std::process::exit(swkb_lab::main_with_args(std::env::args_os()));
}
