use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = conics_cli::run_args(std::env::args_os().skip(1));
    print!("{}", outcome.stdout);
    let _ = std::io::stdout().flush();
    let mut err = std::io::stderr();
    for note in &outcome.notes {
        let _ = writeln!(err, "{}", note.trim_end());
    }
    ExitCode::from(outcome.status as u8)
}
