use mellincheck_cli::{parse_args, run};

fn main() {
    let code = match parse_args(std::env::args_os()) {
        Ok(cmd) => run(&cmd),
        Err(e) => {
            let _ = e.print();
            e.exit_code()
        }
    };
    std::process::exit(code);
}
