//! Homology action of twist words on a closed genus 2 surface.
//!
//! Run with `cargo run --example dehn_twist_homology`.

use twistcert::symplectic::{
    is_level_trivial, is_symplectic, is_torelli, standard_classes, transvection_matrix, word_action,
};
use twistcert::{SymplecticSpace, TwistWord};

fn main() -> twistcert::Result<()> {
    let space = SymplecticSpace::new(2)?;
    let mut classes = standard_classes(&space);

    let t = transvection_matrix(&space.a(1), 1, &space)?;
    println!("T_a1 =\n{t}");
    println!("symplectic: {}, torelli: {}", is_symplectic(&t, &space), is_torelli(&t));

    // The word f = T_beta T_phi_beta^-1 T_phi_alpha^-1 with [beta] = [phi_beta] = 0
    // and [phi_alpha] = a2 acts like T_a2^-1.
    classes.insert("beta".into(), space.zero());
    classes.insert("phi_beta".into(), space.zero());
    classes.insert("phi_alpha".into(), space.a(2));
    let f: TwistWord = "beta phi_beta^-1 phi_alpha^-1".parse()?;
    let m = word_action(&f, &classes, &space)?;
    assert_eq!(m, transvection_matrix(&space.a(2), -1, &space)?);
    println!("f = {f} acts as\n{m}");

    // Bounding pair: two disjoint curves of the same class.
    classes.insert("b2_twin".into(), space.b(2));
    let bp: TwistWord = "b2 b2_twin^-1".parse()?;
    println!("{bp} is Torelli: {}", is_torelli(&word_action(&bp, &classes, &space)?));

    // Powers of a twist climb the level ladder.
    for k in 1..=4 {
        let w = TwistWord::from_pairs([("a1", k)])?;
        let m = word_action(&w, &classes, &space)?;
        let levels: Vec<i64> = (2..=4).filter(|&q| is_level_trivial(&m, q).unwrap()).collect();
        println!("T_a1^{k} is level-trivial for m in {levels:?}");
    }
    Ok(())
}
