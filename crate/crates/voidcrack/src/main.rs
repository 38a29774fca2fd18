use std::process::exit;

fn main() {
    exit(voidcrack::cli::run(std::env::args().collect()));
}
