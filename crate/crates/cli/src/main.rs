fn main() {
    std::process::exit(sectoria::run(std::env::args_os()));
}
