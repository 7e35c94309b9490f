fn main() {
    std::process::exit(bregman_moreau::cli::run_from_env());
}
