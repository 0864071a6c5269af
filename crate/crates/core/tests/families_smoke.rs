use ellft::families::{conj_transpose, is_identity, mat_mul, CentralizerData, Family};
use ellft::groups::{FinGroup, Perm};
use ellft::parse_coeff;

fn c2() -> FinGroup {
    let g2 = Perm::from_cycles(2, "(1 2)").unwrap();
    let mut g = FinGroup::from_generators(2, std::slice::from_ref(&g2)).unwrap();
    g.set_label("g2", &g2).unwrap();
    g
}

fn eps() -> Vec<CentralizerData> {
    let fp = vec![
        ("1".to_string(), vec![("g2".to_string(), parse_coeff("1").unwrap())]),
        ("eps".to_string(), vec![("g2".to_string(), parse_coeff("-1").unwrap())]),
    ];
    ["1", "g2"]
        .iter()
        .map(|x| CentralizerData {
            x: x.to_string(),
            y_labels: vec![],
            fingerprints: fp.clone(),
        })
        .collect()
}

#[test]
fn c2_matrices() {
    for tw in [false, true] {
        let f = Family::build("c2", &c2(), tw, &eps(), None).unwrap();
        println!("{f}");
        assert!(is_identity(&mat_mul(f.ft(), f.ft())));
        assert!(is_identity(&mat_mul(f.ft(), &conj_transpose(f.ft()))));
    }
}
