fn main() {
    let argv: Vec<String> = std::env::args().collect();
    let code = nk_cli::run(&argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    std::process::exit(code);
}
