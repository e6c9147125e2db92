use std::io::Write;

fn main() {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let code = aklt_entanglement::cli::run(std::env::args_os(), &mut out, &mut std::io::stderr());
    let _ = out.flush();
    std::process::exit(code);
}
