//! Free-group words: parsing, reduction and derived-series samples.

use burnside::word::{derived_sample, parse_ast, reduced_words, Word};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for text in ["abBA", "[a,b]", "[a,b]^2", "(ab)^-3", "[[a,b],[a,c]]"] {
        let w = Word::parse(text, 3)?;
        let shown = if w.is_empty() { "1".to_string() } else { w.to_string() };
        println!("{text:<16} -> {shown} (length {}, exponent sums {:?})", w.len(), w.exponent_sums(3));
    }
    println!("tree of [a^2,b]: {:?}", parse_ast("[a^2,b]", 2)?);
    println!("reduced words of length <= 3 over 2 letters: {}", reduced_words(3, 2).len());
    for (n, w) in derived_sample(2, 3, 7, 3, 2)?.iter().enumerate() {
        println!("second derived sample {n}: length {}", w.len());
    }
    Ok(())
}
