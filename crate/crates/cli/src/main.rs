use std::process::ExitCode;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("LEVYTAIL_LOG", "off")).init();
    ExitCode::from(levytail_cli::run(std::env::args().collect()))
}
