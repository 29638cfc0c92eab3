//! Membership in I(q), J(q) and Σ^m: witnesses, certificates, Unknown.

use burnside::ideal::{IdealEngine, IdealSpec, MembershipVerdict, SearchBox};
use burnside::ring::LaurentPoly;

fn show(engine: &IdealEngine, poly: &str, spec: IdealSpec) -> Result<(), Box<dyn std::error::Error>> {
    let p = LaurentPoly::parse(poly, 2)?;
    let v = engine.member(&p, &spec, &SearchBox::default_for(&spec), true)?;
    match &v {
        MembershipVerdict::Member { witness, search_box } => {
            let found = search_box.map_or("by folding".to_string(), |b| format!("at {b}"));
            println!("{p} in {spec} ({} terms, {found})", witness.len());
            println!("  {witness}");
        }
        MembershipVerdict::NonMember { certificate, .. } => println!("{p} not in {spec}: {certificate}"),
        MembershipVerdict::Unknown { search_box } => println!("{p} in {spec}: unknown up to {search_box}"),
    }
    assert!(v.reverify(&p, &spec));
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let engine = IdealEngine::new();
    show(&engine, "1 - x", IdealSpec::iq(2)?)?;
    show(&engine, "1 - x", IdealSpec::jq(2)?)?;
    show(&engine, "1", IdealSpec::iq(3)?)?;
    show(&engine, "(1 - x)*(1 - y)", IdealSpec::iq(3)?)?;
    show(&engine, "x^7 - 1", IdealSpec::jq(7)?)?;
    show(&engine, "(1 - x)^2 - (1 - y)^2", IdealSpec::sigma_pow(2, 2)?)?;
    show(&engine, "(1 - x)^4", IdealSpec::iq(4)?)?;
    show(&engine, "2*(1 - x)*t^2 + (1 - x)*(1 - y)", IdealSpec::jq(2)?.extended())?;
    Ok(())
}
