use std::process::ExitCode;

fn main() -> ExitCode {
    match sbp_dct_cli::cli::run(std::env::args_os()) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            // clap renders its own usage/help text and picks the exit code
            if let Some(clap_err) = err.downcast_ref::<clap::Error>() {
                clap_err.print().ok();
                return ExitCode::from(clap_err.exit_code() as u8);
            }
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
