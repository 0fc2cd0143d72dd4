use triangle_finsler::cli::titeica_table;

fn main() -> triangle_finsler::Result<()> {
    let angles = [0.0, std::f64::consts::FRAC_PI_2, std::f64::consts::PI / 7.0];
    let (rows, passed) = titeica_table(&[1.0, 2.0, 4.0, 8.0], 512, &angles)?;
    for r in rows {
        println!("d {:>3}  angle {:.4}  gauge {:.12}  limit {:.12}", r.radius, r.angle, r.gauge, r.limit);
    }
    println!("monotone and bounded below: {passed}");
    Ok(())
}
