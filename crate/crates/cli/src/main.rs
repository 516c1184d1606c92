fn main() {
    std::process::exit(hpkit::run());
}
