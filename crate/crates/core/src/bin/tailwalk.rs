fn main() {
    std::process::exit(tailwalk::cli::main(std::env::args_os()));
}
