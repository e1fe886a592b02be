fn main() -> std::process::ExitCode {
    tweedwire::cli::main()
}
