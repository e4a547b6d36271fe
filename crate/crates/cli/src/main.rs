use std::io::{self, Write};

fn main() {
    let (stdout, stderr) = (io::stdout(), io::stderr());
    let code = banzhaf_cli::app::run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock());
    let _ = io::stdout().flush();
    std::process::exit(code);
}
