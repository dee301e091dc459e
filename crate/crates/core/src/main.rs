fn main() {
    let code = qrt_kit::cli::run(std::env::args_os(), &mut std::io::stdout().lock());
    std::process::exit(code);
}
