fn main() {
    std::process::exit(transfer_evi::cli::run(std::env::args_os()));
}
