// SPDX-License-Identifier: MIT OR Apache-2.0

use std::io;

fn main() {
    let code = cpwx::cli::execute(std::env::args_os(), &mut io::stdout(), &mut io::stderr());
    std::process::exit(code);
}
