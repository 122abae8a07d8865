//! Arithmetic in GF(3^4): the modulus, a primitive element, Frobenius and
//! roots of unity.

use genfermat::ff::make_field;

fn main() -> genfermat::Result<()> {
    let f = make_field(3, 4)?;
    println!("{f}, modulus (constant term first) {:?}", f.modulus());

    let g = f.generator();
    println!("primitive element {} of order {}", f.render(g), f.element_order(g).unwrap());

    let a = f.from_coeffs(&[1, 2, 0, 1])?;
    let b = f.inv(a)?;
    println!("a = {}, a^-1 = {}, a·a^-1 = {}", f.render(a), f.render(b), f.render(f.mul(a, b)));
    println!("a^(3^4) = a: {}", f.frobenius(a, 4) == a);
    println!("a lies in GF(3^{})", f.element_degree(a));

    for k in [2, 4, 5, 8, 16] {
        if f.contains_roots_of_unity(k) {
            let w = f.primitive_root_of_unity(k)?;
            println!("root of unity of order {k}: {}", f.render(w));
        } else {
            println!("no root of unity of order {k} in {f}");
        }
    }
    Ok(())
}
