use triangle_finsler::spectral::trace_top_degrees;
use triangle_finsler::triangle_group::{Presentation, SymbolicRep, Word};

fn main() -> triangle_finsler::Result<()> {
    let rep = SymbolicRep::new(Presentation::new(4, 4, 4)?)?;
    for text in ["ab", "abcb", "abac", "cbcacbcacbcacbacbabcabab"] {
        let w: Word = text.parse()?;
        let d = trace_top_degrees(&rep, &w)?;
        println!("{text}: tr = {}", rep.evaluate(&w).trace());
        println!("  degrees ({}, {})", d.d1, d.d2);
    }
    Ok(())
}
