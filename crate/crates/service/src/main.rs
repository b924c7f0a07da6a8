fn main() -> std::process::ExitCode {
    infoforge_service::cli::main()
}
