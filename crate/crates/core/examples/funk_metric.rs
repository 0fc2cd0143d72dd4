use num_complex::Complex64;
use triangle_finsler::domain_shape::{dds_eval, fds_eval, hilbert_distance, titeica_triangle, ConvexBody, Lift};

fn main() -> triangle_finsler::Result<()> {
    let square = ConvexBody::polygon(
        vec![
            Complex64::new(-1.0, -1.0),
            Complex64::new(1.0, -1.0),
            Complex64::new(1.0, 1.0),
            Complex64::new(-1.0, 1.0),
        ],
        Complex64::new(0.0, 0.0),
    )?;
    let (x, y) = (Complex64::new(0.2, -0.1), Complex64::new(-0.5, 0.6));
    println!("square: d({x}, {y}) = {:.12}", dds_eval(&square, Lift::Flat, x, y)?);
    println!("square: d({y}, {x}) = {:.12}", dds_eval(&square, Lift::Flat, y, x)?);
    println!("square: hilbert = {:.12}", hilbert_distance(&square, x, y)?);

    let disk = ConvexBody::unit_disk();
    let v = Complex64::new(0.0, 1.0);
    let f = fds_eval(&disk, Lift::Flat, x, v)?;
    for tau in [1e-2, 1e-3, 1e-4] {
        let q = dds_eval(&disk, Lift::Flat, x, x + v * tau)? / tau;
        println!("disk: tau {tau:e}: quotient {q:.9}, norm {f:.9}");
    }

    let tri = titeica_triangle();
    println!("titeica lift at 0: F(1) = {:.12}", fds_eval(&tri, Lift::Titeica, Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0))?);
    Ok(())
}
