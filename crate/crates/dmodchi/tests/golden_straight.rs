//! Golden-file test for the straight-module text serialization.

use dmodchi::exactlin::FieldCfg;
use dmodchi::monomial::parse_ideal;
use dmodchi::straight::{from_local_cohomology, StraightModule};

#[test]
fn serialization_matches_golden_file() {
    let golden = include_str!("data/straight_h1_x0x1.txt");
    let ideal = parse_ideal(2, "x0*x1", false).unwrap();
    let module = from_local_cohomology(&ideal, 1, FieldCfg::Rational).unwrap();
    assert_eq!(module.to_text(), golden);
}

#[test]
fn golden_file_parses_back_to_the_module() {
    let golden = include_str!("data/straight_h1_x0x1.txt");
    let parsed = StraightModule::from_text(golden).unwrap();
    let ideal = parse_ideal(2, "x0*x1", false).unwrap();
    let module = from_local_cohomology(&ideal, 1, FieldCfg::Rational).unwrap();
    assert_eq!(parsed, module);
}
