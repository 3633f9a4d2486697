fn main() -> std::process::ExitCode {
    qdl_lab::cli::main()
}
