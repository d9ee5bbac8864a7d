//! Writes a 0..90 degree sweep as CSV to standard output.

use discrim::sweep;

fn main() -> discrim::Result<()> {
    let rows = sweep::sweep(0.0, 90.0, 19)?;
    sweep::write_csv(&rows, std::io::stdout().lock())
}
