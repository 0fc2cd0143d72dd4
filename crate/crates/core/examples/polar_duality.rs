use triangle_finsler::domain_shape::{polar_dual, truncated_ball, BilinearForm};

fn main() -> triangle_finsler::Result<()> {
    let ball = truncated_ball(4.0, 128)?;
    let form = BilinearForm::flat();
    let dual = polar_dual(&ball, &form)?;
    let back = polar_dual(&dual, &form)?;
    println!("ball: {} vertices, dual: {} vertices", ball.vertices().len(), dual.vertices().len());
    println!("bipolar vertex distance {:e}", back.vertex_distance(&ball));
    Ok(())
}
