fn main() {
    let (code, out) = treehopf::cli::run(std::env::args().collect());
    print!("{}", out);
    std::process::exit(code);
}
