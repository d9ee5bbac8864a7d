//! Best single-shot discrimination: one probe, one measurement.

use discrim::measurements::single_use_optimum;

fn main() -> discrim::Result<()> {
    for deg in [15.0f64, 30.0, 45.0, 60.0, 75.0] {
        let (probe, p) = single_use_optimum(deg.to_radians())?;
        println!("theta = {deg:>4} deg  p = {p:.6}  probe = {probe}");
    }
    Ok(())
}
