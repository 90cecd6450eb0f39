mod common;

fn check(name: &str) {
    let (_, property, cases) = common::ALL.iter().find(|p| p.0 == name).unwrap();
    if let Err(e) = property(*cases) {
        panic!("{name}: {e}");
    }
}

#[test]
fn hilbert_identities() {
    check("hilbert identities");
}

#[test]
fn barnes_recurrence() {
    check("barnes recurrence");
}

#[test]
fn normalization() {
    check("normalization");
}

#[test]
fn realness() {
    check("realness");
}

#[test]
fn composition() {
    check("composition");
}

#[test]
fn rescale_round_trip() {
    check("rescale round trip");
}

#[test]
fn precision_robustness() {
    check("precision robustness");
}

#[test]
fn method_agreement() {
    check("method agreement");
}
