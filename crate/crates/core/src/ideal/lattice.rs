//! Truncated ideal lattices: generator enumeration, shifted products laid
//! out over a window of monomials, and HNF membership with witnesses.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use super::hnf::{self, Column, Echelon, SparseVec};
use super::{Generator, IdealError, IdealKind, IdealSpec, SearchBox, Witness, WitnessBuilder};
use crate::ring::{cyc_element, ExpVec, LaurentPoly, UnitMonomial};

/// Bumped whenever the on-disk lattice layout changes.
pub const FORMAT_VERSION: u32 = 1;

/// All exponent vectors in `[-r, r]^k` (t slot zero), ascending tuple order.
pub(crate) fn exponent_box(k: usize, r: i32) -> Vec<ExpVec> {
    let mut out = vec![ExpVec::zero(k)];
    for i in 0..k {
        out = out
            .into_iter()
            .flat_map(|e| (-r..=r).map(move |v| e.with(i, v)))
            .collect();
    }
    out.sort_by(|a, b| a.as_slice().cmp(b.as_slice()));
    out
}

/// Finite generator list for the ideal, truncated by the box.
///
/// * `Iq`: `cyc_q(u)` for positive units `u = x^i y^j`, `|i|,|j| ≤ d_unit`.
/// * `Jq`: every `Iq` generator times `(1 - x)` and `(1 - y)`.
/// * `SigmaPow(m)`: all m-fold products of the `(1 - x_i)`.
pub fn generators(spec: &IdealSpec, search_box: &SearchBox) -> Result<Vec<Generator>, IdealError> {
    spec.validate()?;
    let k = spec.k;
    match spec.kind {
        IdealKind::SigmaPow { m } => {
            let mut out = Vec::new();
            // multisets of size m over the k factors, as exponent counts
            let mut counts = vec![0u32; k];
            fn rec(i: usize, left: u32, counts: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
                if i + 1 == counts.len() {
                    counts[i] = left;
                    out.push(counts.clone());
                    return;
                }
                for c in (0..=left).rev() {
                    counts[i] = c;
                    rec(i + 1, left - c, counts, out);
                }
            }
            let mut shapes = Vec::new();
            rec(0, m, &mut counts, &mut shapes);
            for shape in shapes {
                let mut poly = LaurentPoly::one(k);
                let mut label = Vec::new();
                for (i, &c) in shape.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    poly = &poly * &LaurentPoly::one_minus_var(k, i).pow(c);
                    let name = crate::ring::var_names(k)[i];
                    label.push(if c == 1 { format!("(1-{name})") } else { format!("(1-{name})^{c}") });
                }
                out.push(Generator { label: label.join("*"), poly });
            }
            Ok(out)
        }
        IdealKind::Iq | IdealKind::Jq => {
            let q = spec.q.expect("validated");
            let mut units = exponent_box(2, search_box.d_unit as i32);
            units.sort();
            let mut out = Vec::new();
            for u in units {
                let unit = UnitMonomial::positive(u);
                let cyc = cyc_element(q.q(), &unit)?;
                let base = format!("cyc{}({})", q.q(), unit);
                if spec.kind == IdealKind::Iq {
                    out.push(Generator { label: base, poly: cyc });
                } else {
                    for (i, name) in ["x", "y"].iter().enumerate() {
                        out.push(Generator {
                            label: format!("{base}*(1-{name})"),
                            poly: &cyc * &LaurentPoly::one_minus_var(2, i),
                        });
                    }
                }
            }
            Ok(out)
        }
    }
}

/// HNF basis of the lattice spanned by every boxed generator shift that fits
/// inside the window.
#[derive(Clone, Debug)]
pub struct LatticeBasis {
    pub spec: IdealSpec,
    pub search_box: SearchBox,
    pub format_version: u32,
    pub monomial_index: Vec<ExpVec>,
    pub generators: Vec<Arc<Generator>>,
    /// `(generator index, shift)` for every product that fit in the window.
    pub products: Vec<(usize, ExpVec)>,
    /// Fully reduced HNF columns; each carries its combination of products.
    pub columns: Vec<Column>,
    /// Products dropped because they escaped the window.
    pub discarded: usize,
    row_of: HashMap<ExpVec, usize>,
}

impl PartialEq for LatticeBasis {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
            && self.search_box == other.search_box
            && self.format_version == other.format_version
            && self.monomial_index == other.monomial_index
            && self.products == other.products
            && self.columns == other.columns
    }
}

impl LatticeBasis {
    /// Builds the lattice for `spec` from the box's own generator list.
    pub fn build(spec: &IdealSpec, search_box: &SearchBox) -> Result<Self, IdealError> {
        let gens = generators(spec, search_box)?;
        Self::from_generators(spec, search_box, gens)
    }

    /// Builds the lattice from an explicit generator list (any order).
    pub fn from_generators(
        spec: &IdealSpec,
        search_box: &SearchBox,
        gens: Vec<Generator>,
    ) -> Result<Self, IdealError> {
        search_box.check_for(spec)?;
        let plain = spec.without_t();
        let monomial_index = exponent_box(spec.k, search_box.window as i32);
        let row_of: HashMap<ExpVec, usize> =
            monomial_index.iter().enumerate().map(|(i, e)| (*e, i)).collect();
        let generators: Vec<Arc<Generator>> = gens.into_iter().map(Arc::new).collect();
        let (products, vectors, discarded) = shifted_products(&generators, spec.k, search_box, &row_of);
        if products.is_empty() {
            return Err(IdealError::WindowTooSmall {
                window: search_box.window,
                needed: search_box.required_window(spec),
            });
        }
        let mut ech = Echelon::new(true);
        for (id, v) in vectors.into_iter().enumerate() {
            ech.insert(v, id);
        }
        let (columns, _) = ech.finish();
        Ok(LatticeBasis {
            spec: plain,
            search_box: *search_box,
            format_version: FORMAT_VERSION,
            monomial_index,
            generators,
            products,
            columns,
            discarded,
            row_of,
        })
    }

    /// Reassembles a basis from persisted parts, regenerating generators
    /// and products and checking that everything lines up.
    pub(crate) fn from_parts(
        spec: &IdealSpec,
        search_box: &SearchBox,
        monomial_index: Vec<ExpVec>,
        columns: Vec<Column>,
    ) -> Result<Self, String> {
        let fresh_index = exponent_box(spec.k, search_box.window as i32);
        if fresh_index != monomial_index {
            return Err("monomial index does not match the window".into());
        }
        if !hnf::is_hnf(&columns) {
            return Err("stored matrix is not in Hermite normal form".into());
        }
        let gens = generators(spec, search_box).map_err(|e| e.to_string())?;
        let row_of: HashMap<ExpVec, usize> =
            monomial_index.iter().enumerate().map(|(i, e)| (*e, i)).collect();
        let generators: Vec<Arc<Generator>> = gens.into_iter().map(Arc::new).collect();
        let (products, vectors, discarded) = shifted_products(&generators, spec.k, search_box, &row_of);
        for col in &columns {
            if col.vector.max_index().is_some_and(|i| i >= monomial_index.len()) {
                return Err("column index out of range".into());
            }
            let Some(combo) = &col.combo else { return Err("missing transform".into()) };
            let mut acc = SparseVec::new();
            for (pi, c) in combo.entries() {
                let Some(v) = vectors.get(*pi) else { return Err("transform index out of range".into()) };
                acc = acc.combine(&BigInt::from(1), v, c);
            }
            if acc != col.vector {
                return Err("transform does not reproduce its column".into());
            }
        }
        Ok(LatticeBasis {
            spec: spec.without_t(),
            search_box: *search_box,
            format_version: FORMAT_VERSION,
            monomial_index,
            generators,
            products,
            columns,
            discarded,
            row_of,
        })
    }

    pub fn rank(&self) -> usize {
        self.columns.len()
    }

    /// Lays a t-free polynomial out over the monomial index.
    pub fn vector_of(&self, p: &LaurentPoly) -> Option<SparseVec> {
        layout(p, &self.row_of)
    }

    /// Integer coefficients over the HNF columns reproducing `v`, if any.
    pub fn lattice_member(&self, v: &SparseVec) -> Result<Option<Vec<BigInt>>, IdealError> {
        if v.max_index().is_some_and(|i| i >= self.monomial_index.len()) {
            return Err(IdealError::DimensionMismatch {
                expected: self.monomial_index.len(),
                got: v.max_index().unwrap() + 1,
            });
        }
        let Some(coeffs) = hnf::solve(&self.columns, v) else { return Ok(None) };
        let mut check = SparseVec::new();
        for (c, col) in coeffs.iter().zip(&self.columns) {
            if !c.is_zero() {
                check = check.combine(&BigInt::from(1), &col.vector, c);
            }
        }
        assert_eq!(&check, v, "back-substitution must reproduce the target");
        Ok(Some(coeffs))
    }

    /// Expresses `p` as a combination of shifted generators, if the
    /// truncated lattice contains it.
    pub fn express(&self, p: &LaurentPoly) -> Option<Witness> {
        let v = self.vector_of(p)?;
        let coeffs = self.lattice_member(&v).ok()??;
        let mut product_coeffs = SparseVec::new();
        for (c, col) in coeffs.iter().zip(&self.columns) {
            if c.is_zero() {
                continue;
            }
            let combo = col.combo.as_ref().expect("lattice bases track transforms");
            product_coeffs = product_coeffs.combine(&BigInt::from(1), combo, c);
        }
        let mut builder = WitnessBuilder::default();
        for (pi, c) in product_coeffs.entries() {
            let (gi, shift) = self.products[*pi];
            builder.add(&self.generators[gi], shift, c.clone());
        }
        Some(builder.finish())
    }
}

type Products = (Vec<(usize, ExpVec)>, Vec<SparseVec>, usize);

fn shifted_products(
    generators: &[Arc<Generator>],
    k: usize,
    search_box: &SearchBox,
    row_of: &HashMap<ExpVec, usize>,
) -> Products {
    let shifts = exponent_box(k, search_box.d_shift as i32);
    let mut products = Vec::new();
    let mut vectors = Vec::new();
    let mut discarded = 0;
    for (gi, g) in generators.iter().enumerate() {
        for s in &shifts {
            match layout(&g.poly.shift(s), row_of) {
                Some(v) => {
                    products.push((gi, *s));
                    vectors.push(v);
                }
                None => discarded += 1,
            }
        }
    }
    (products, vectors, discarded)
}

fn layout(p: &LaurentPoly, row_of: &HashMap<ExpVec, usize>) -> Option<SparseVec> {
    let mut pairs = Vec::with_capacity(p.num_terms());
    for (e, c) in p.terms() {
        pairs.push((*row_of.get(e)?, c.clone()));
    }
    Some(SparseVec::from_pairs(pairs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn p(s: &str) -> LaurentPoly {
        LaurentPoly::parse(s, 2).unwrap()
    }

    fn as_set(gens: &[Generator]) -> BTreeSet<String> {
        gens.iter().map(|g| g.poly.to_string()).collect()
    }

    #[test]
    fn iq_generators_in_unit_box() {
        let gens = generators(&IdealSpec::iq(2).unwrap(), &SearchBox::new(1, 0, 2)).unwrap();
        let expected: BTreeSet<String> = [
            "2", "1 + x", "1 + x^-1", "1 + y", "1 + y^-1", "1 + x*y", "1 + x*y^-1", "1 + x^-1*y", "1 + x^-1*y^-1",
        ]
        .iter()
        .map(|s| p(s).to_string())
        .collect();
        assert_eq!(as_set(&gens), expected);
    }

    #[test]
    fn sigma_pow_generators() {
        let gens = generators(&IdealSpec::sigma_pow(2, 2).unwrap(), &SearchBox::new(0, 0, 2)).unwrap();
        let polys: Vec<LaurentPoly> = gens.iter().map(|g| g.poly.clone()).collect();
        assert_eq!(polys, vec![p("(1-x)^2"), p("(1-x)*(1-y)"), p("(1-y)^2")]);
        let three = generators(&IdealSpec::sigma_pow(1, 3).unwrap(), &SearchBox::new(0, 0, 1)).unwrap();
        assert_eq!(three.len(), 3);
    }

    #[test]
    fn jq_generators_with_trivial_unit_box() {
        let gens = generators(&IdealSpec::jq(2).unwrap(), &SearchBox::new(0, 0, 1)).unwrap();
        let expected: BTreeSet<String> = [p("2*(1-x)"), p("2*(1-y)")].iter().map(|q| q.to_string()).collect();
        assert_eq!(as_set(&gens), expected);
    }

    #[test]
    fn jq_lattice_contains_its_generator() {
        let lat = LatticeBasis::build(&IdealSpec::jq(2).unwrap(), &SearchBox::new(0, 1, 2)).unwrap();
        assert!(hnf::is_hnf(&lat.columns));
        let w = lat.express(&p("2 - 2*x")).unwrap();
        assert_eq!(w.recombine(2), p("2 - 2*x"));
    }

    #[test]
    fn sigma_one_lattice_is_spanned_by_its_generators() {
        let spec = IdealSpec::sigma_pow(1, 2).unwrap();
        let lat = LatticeBasis::build(&spec, &SearchBox::new(0, 0, 1)).unwrap();
        assert_eq!(lat.rank(), 2);
        assert_eq!(lat.discarded, 0);
        assert!(lat.express(&p("1 - x")).is_some());
        assert!(lat.express(&p("x - y")).is_some());
        assert!(lat.express(&p("1 - x*y")).is_none());
        assert!(lat.express(&p("x^5")).is_none());
    }

    #[test]
    fn window_too_small_is_rejected() {
        let spec = IdealSpec::iq(3).unwrap();
        assert!(matches!(
            LatticeBasis::build(&spec, &SearchBox::new(2, 0, 3)),
            Err(IdealError::WindowTooSmall { .. })
        ));
    }

    #[test]
    fn lattice_member_rejects_dimension_mismatch() {
        let lat = LatticeBasis::build(&IdealSpec::sigma_pow(1, 2).unwrap(), &SearchBox::new(0, 0, 1)).unwrap();
        let v = SparseVec::unit(100);
        assert!(matches!(lat.lattice_member(&v), Err(IdealError::DimensionMismatch { .. })));
    }
}
