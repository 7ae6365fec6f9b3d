//! The three worked examples, as printed by `rsl examples`.

fn main() {
    let report = rsl_core::cli::cmd_examples();
    print!("{}", report.to_text());
    if !report.passed() {
        std::process::exit(1);
    }
}
