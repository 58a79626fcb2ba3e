//! The two bundled example curves, kept in factored form and expanded
//! exactly; the committed fixture files are regenerated from here.

use num_rational::BigRational;
use qmsurf_core::curve::CurveModel;
use qmsurf_core::poly::QuadPoly;
use qmsurf_core::quadfield::QuadElem;

use crate::curvefile::render_curve;
use crate::Result;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Genus-2 curve over Q(sqrt 2):
/// y^2 = (x^2 + 5)((-1/6 + sqrt 2) x^4 + 20 x^3 - 490/6 x^2 + 100 x + 25 (-1/6 - sqrt 2)).
pub fn curve_c1() -> CurveModel {
    let d = 2;
    let q = |n: (i64, i64), v: (i64, i64)| QuadElem::new(d, rat(n.0, n.1), rat(v.0, v.1)).unwrap();
    let quartic = QuadPoly::new(
        d,
        vec![
            q((-25, 6), (-25, 1)), // 25 (-1/6 - sqrt 2)
            q((100, 1), (0, 1)),
            q((-490, 6), (0, 1)),
            q((20, 1), (0, 1)),
            q((-1, 6), (1, 1)),
        ],
    )
    .unwrap();
    let front = QuadPoly::new(d, vec![q((5, 1), (0, 1)), q((0, 1), (0, 1)), q((1, 1), (0, 1))])
        .unwrap();
    expand(front, quartic, d)
}

/// Genus-2 curve over Q:
/// y^2 = (x^2 + 7/2)(83/30 x^4 + 14 x^3 - 1519/30 x^2 + 49 x - 1813/120).
pub fn curve_c2() -> CurveModel {
    let d = 1;
    let q = |n: (i64, i64)| QuadElem::new(d, rat(n.0, n.1), rat(0, 1)).unwrap();
    let quartic = QuadPoly::new(
        d,
        vec![q((-1813, 120)), q((49, 1)), q((-1519, 30)), q((14, 1)), q((83, 30))],
    )
    .unwrap();
    let front = QuadPoly::new(d, vec![q((7, 2)), q((0, 1)), q((1, 1))]).unwrap();
    expand(front, quartic, d)
}

fn expand(front: QuadPoly, quartic: QuadPoly, d: i64) -> CurveModel {
    let product = front.mul(&quartic).expect("same field");
    let mut coeffs = core::array::from_fn(|_| QuadElem::zero(d));
    for (k, c) in product.coeffs().iter().enumerate() {
        coeffs[k] = c.clone();
    }
    CurveModel::new(d, coeffs).expect("expanded sextic is a valid model")
}

pub fn c1_file() -> String {
    render_curve(
        &curve_c1(),
        "expanded model of y^2 = (x^2 + 5)((-1/6 + sqrt2) x^4 + 20 x^3 - 490/6 x^2 + 100 x + 25(-1/6 - sqrt2)) over Q(sqrt 2)",
    )
}

pub fn c2_file() -> String {
    render_curve(
        &curve_c2(),
        "expanded model of y^2 = (x^2 + 7/2)(83/30 x^4 + 14 x^3 - 1519/30 x^2 + 49 x - 1813/120) over Q",
    )
}

/// Writes both fixture files into `dir`.
pub fn write_fixtures(dir: &std::path::Path) -> Result<Vec<std::path::PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    for (name, contents) in [("c1.curve", c1_file()), ("c2.curve", c2_file())] {
        let path = dir.join(name);
        std::fs::write(&path, contents)?;
        written.push(path);
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvefile::parse_curve;
    use num_traits::Signed;

    #[test]
    fn c1_expansion_spot_values() {
        let c = curve_c1();
        // c6 = -1/6 + sqrt 2, c5 = 20, c0 = -125/6 - 125 sqrt 2
        assert_eq!(*c.coeff(6).u(), rat(-1, 6));
        assert_eq!(*c.coeff(6).v(), rat(1, 1));
        assert_eq!(*c.coeff(5).u(), rat(20, 1));
        assert_eq!(*c.coeff(0).u(), rat(-125, 6));
        assert_eq!(*c.coeff(0).v(), rat(-125, 1));
        // c4 = -490/6 + 5(-1/6 + sqrt 2) = -165/2 + 5 sqrt 2
        assert_eq!(*c.coeff(4).u(), rat(-165, 2));
        assert_eq!(*c.coeff(4).v(), rat(5, 1));
    }

    #[test]
    fn c2_expansion_spot_values() {
        let c = curve_c2();
        assert_eq!(*c.coeff(6).u(), rat(83, 30));
        assert_eq!(*c.coeff(0).u(), rat(-12691, 240));
        assert_eq!(*c.coeff(1).u(), rat(343, 2));
        assert!(c.coeff(3).u().is_positive());
    }

    #[test]
    fn files_parse_back() {
        for text in [c1_file(), c2_file()] {
            let c = parse_curve(&text).unwrap();
            assert_eq!(c.degree(), 6);
        }
    }
}
