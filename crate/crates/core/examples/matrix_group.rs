//! Generator matrices, word evaluation and the normal form over R.

use burnside::matrix::{
    abelianization_unit, check_t_commute, eval_word, generator_m, generator_t, un_form_extract, GeneratorSet,
    Presentation,
};
use burnside::word::Word;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("M1 = {}", generator_m(1, 2)?);
    println!("M2 = {}", generator_m(2, 2)?);
    println!("T2 = {}", generator_t(2, 2)?);

    let base = GeneratorSet::new(Presentation::Base, 2)?;
    let ext = GeneratorSet::new(Presentation::Extended, 2)?;
    let w = Word::parse("abAbb", 2)?;
    let m = eval_word(&w, &base)?;
    println!("{w} over R: {m}");
    let form = un_form_extract(&m)?;
    println!("  u = {} (abelianization {}), lambdas = {:?}", form.u, abelianization_unit(&w, 2), form.lambdas);

    let c = Word::parse("[[a,b],[ab,ba]]", 2)?;
    println!("{c} over R is I: {}", eval_word(&c, &base)?.is_identity());
    println!("{c} over R[t] is I: {}", eval_word(&c, &ext)?.is_identity());
    println!("{w} over R[t], t -> 1: {}", eval_word(&w, &ext)?.set_t_one());
    for k in 2..=4 {
        println!("T_i commute for k={k}: {}", check_t_commute(k)?);
    }
    Ok(())
}
