use triangle_finsler::cli::limit_table;
use triangle_finsler::triangle_group::{Param, Presentation, Word};

fn main() -> triangle_finsler::Result<()> {
    let pres = Presentation::new(4, 4, 4)?;
    let w: Word = "cbcacbcacbcacbacbabcabab".parse()?;
    let params: Vec<Param> = [1e3, 1e6, 1e12, 1e24, 1e48].map(Param::T2).to_vec();
    let (rows, decreasing) = limit_table(&pres, &w, &params)?;
    for r in rows {
        println!("t^2 = {:e}: ratio {:?} predicted {:?}", r.t2, r.ratio, r.predicted);
    }
    println!("residuals strictly decreasing: {decreasing}");
    Ok(())
}
