use std::io::Write;

fn main() {
    let outcome = patcount_cli::run(std::env::args_os().skip(1));
    let mut stdout = std::io::stdout().lock();
    stdout
        .write_all(outcome.stdout.as_bytes())
        .expect("write to stdout");
    stdout.flush().expect("flush stdout");
    eprint!("{}", outcome.stderr);
    std::process::exit(outcome.code);
}
