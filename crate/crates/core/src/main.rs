fn main() {
    let (code, out) = eqtc::cli::run(std::env::args_os());
    if code == eqtc::cli::EXIT_INPUT {
        eprint!("{out}");
    } else {
        print!("{out}");
    }
    std::process::exit(code);
}
