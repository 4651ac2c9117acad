fn main() {
    std::process::exit(trsm_costlab::cli::run(std::env::args_os()));
}
