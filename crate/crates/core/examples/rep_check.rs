use triangle_finsler::triangle_group::{NumericRep, Param, Presentation, SymbolicRep};

fn main() -> triangle_finsler::Result<()> {
    let pres = Presentation::new(4, 4, 4)?;
    let rep = SymbolicRep::new(pres)?;
    for check in rep.verify_relations() {
        println!("{check:?}");
    }
    println!("triple ratio {}", rep.triple_ratio()?);
    let numeric = NumericRep::new(pres, Param::T2(50.0))?;
    println!("numeric triple ratio at t^2 = 50: {}", numeric.triple_ratio()?);
    Ok(())
}
