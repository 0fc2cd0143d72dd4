use triangle_finsler::flat_metric::{build_tube, check_degree_length};
use triangle_finsler::triangle_group::{Presentation, SymbolicRep, Word};

fn main() -> triangle_finsler::Result<()> {
    let pres = Presentation::new(4, 4, 4)?;
    let rep = SymbolicRep::new(pres)?;
    let w: Word = "cbcacbcacbcacbacbabcabab".parse()?;
    let tube = build_tube(&pres, &w, 2)?;
    println!("tube: {} triangles, {} vertices", tube.triangles().len(), tube.vertices().len());
    let report = check_degree_length(&rep, &w)?;
    println!("{report:?}");
    Ok(())
}
