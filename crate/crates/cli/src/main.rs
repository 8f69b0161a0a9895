use std::path::PathBuf;

fn main() {
    let env_out = std::env::var_os("SEMIREG_OUT").map(PathBuf::from);
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let code = semireg_cli::run(std::env::args_os(), env_out, &mut stdout.lock(), &mut stderr.lock());
    std::process::exit(code);
}
