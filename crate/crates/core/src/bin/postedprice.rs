fn main() {
    std::process::exit(postedprice::cli::main());
}
