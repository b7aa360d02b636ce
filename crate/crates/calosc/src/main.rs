fn main() {
    std::process::exit(calosc::cli::run(std::env::args()) as i32);
}
