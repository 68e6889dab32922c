fn main() {
    std::process::exit(knotcord::run_cli());
}
