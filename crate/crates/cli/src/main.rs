fn main() {
    std::process::exit(optcol_cli::run(std::env::args_os()));
}
