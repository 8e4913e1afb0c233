fn main() {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let (code, out) = twistext::cli::run(&argv);
    if code == 0 {
        print!("{out}");
    } else {
        eprint!("{out}");
    }
    std::process::exit(code);
}
