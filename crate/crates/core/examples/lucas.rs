//! Binomial coefficients mod p through base-p digits, and the smallest `u`
//! with `C(k-1, u)` nonzero mod p.

use genfermat::multinomial::{binom_nonzero_mod_p, is_power_of_p, lucas_witness, p_adic_digits};

fn main() -> genfermat::Result<()> {
    let p = 3;
    for k in [4, 5, 7, 10, 11, 28] {
        let digits = p_adic_digits(k - 1, p);
        let row: String = (0..k).map(|u| if binom_nonzero_mod_p(k - 1, u, p).unwrap() { '*' } else { '.' }).collect();
        let witness = match lucas_witness(k, p)? {
            Some(u) => format!("witness u = {u}"),
            None => "no witness".to_string(),
        };
        println!(
            "k = {k:>2}: k-1 in base {p} = {:?}, power of p: {:<5} row {row:<28} {witness}",
            digits.digits(),
            is_power_of_p(k - 1, p)?
        );
    }
    Ok(())
}
