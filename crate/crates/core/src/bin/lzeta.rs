fn main() {
    liouville_zeta::cli::main_exit();
}
