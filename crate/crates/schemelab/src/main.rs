fn main() {
    std::process::exit(schemelab::experiment::cli_main());
}
