use std::io;

fn main() {
    let code = salpeter_bounds::cli::main_with_args(std::env::args_os(), &mut io::stdout().lock(), &mut io::stderr().lock());
    std::process::exit(code);
}
