use triangle_finsler::algebra::{cos_embed, number_field, NFElem};

fn main() -> triangle_finsler::Result<()> {
    for m in [3, 4, 5, 7, 12] {
        let field = number_field(m)?;
        let c: NFElem = cos_embed(&field, 1);
        let inv = c.inv()?;
        println!(
            "Q(cos 2pi/{m}): degree {}, min poly {}, 2cos = {:.12}, 1/(2cos) = {:.12}",
            field.degree(),
            field.min_poly_string(),
            c.to_f64(),
            inv.to_f64()
        );
    }
    Ok(())
}
