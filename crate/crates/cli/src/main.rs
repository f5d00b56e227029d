fn main() -> std::process::ExitCode {
    crossfam_cli::run(std::env::args_os())
}
