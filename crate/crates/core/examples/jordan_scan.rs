use triangle_finsler::spectral::{jordan_scan, lattice_stats, write_csv};
use triangle_finsler::triangle_group::{NumericRep, Param, Presentation};

fn main() -> triangle_finsler::Result<()> {
    let rep = NumericRep::new(Presentation::new(4, 4, 4)?, Param::T2(1e12))?;
    let points = jordan_scan(&rep, 8)?;
    write_csv(&points, &mut std::io::stdout().lock())?;
    let stats = lattice_stats(&points, rep.t().ln())?;
    eprintln!("{} classes, lattice mean {:.4}, p90 {:.4}", stats.count, stats.mean, stats.p90);
    Ok(())
}
