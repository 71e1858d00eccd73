mod common;

#[test]
fn golden_invocations() {
    let failures = common::golden::check_all();
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}
