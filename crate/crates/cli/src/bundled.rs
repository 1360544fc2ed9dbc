//! Spec files shipped with the binary.

pub const SO3: &str = include_str!("../specs/so3.spec");
pub const ABELIAN: &str = include_str!("../specs/abelian.spec");
pub const HEISENBERG: &str = include_str!("../specs/heisenberg.spec");
pub const SO3_CLWX: &str = include_str!("../specs/so3-clwx.spec");
pub const SKELETAL: &str = include_str!("../specs/skeletal.spec");
pub const SL2_CROSSED_MODULE: &str = include_str!("../specs/sl2-crossed-module.spec");
pub const SEMISTRICT_GL2: &str = include_str!("../specs/semistrict-gl2.spec");

/// All bundled files by name.
pub const ALL: [(&str, &str); 7] = [
    ("so3", SO3),
    ("abelian", ABELIAN),
    ("heisenberg", HEISENBERG),
    ("so3-clwx", SO3_CLWX),
    ("skeletal", SKELETAL),
    ("sl2-crossed-module", SL2_CROSSED_MODULE),
    ("semistrict-gl2", SEMISTRICT_GL2),
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::document::{parse, print};
    use crate::model;
    use lie2alg::samples;

    #[test]
    fn all_parse_and_normalize() {
        for (name, src) in ALL {
            let d = parse(src).unwrap_or_else(|e| panic!("{name}: {e}"));
            let once = print(&d);
            assert_eq!(print(&parse(&once).unwrap()), once, "{name}");
        }
    }

    #[test]
    fn semistrict_file_matches_sample() {
        let f = model::lie2_doc(&parse(SEMISTRICT_GL2).unwrap()).unwrap();
        let q = samples::semistrict_gl2();
        assert_eq!(f.lie, q.lie);
        assert_eq!(f.pairing, Some(q.pairing));
    }

    #[test]
    fn crossed_module_file_is_identity() {
        let cm = model::crossed_module_doc(&parse(SL2_CROSSED_MODULE).unwrap()).unwrap();
        assert_eq!(cm, lie2alg::gla::CrossedModuleLie::identity(&samples::sl2()));
    }
}
