mod common;

#[test]
fn field_axioms() {
    common::field_axioms().unwrap();
}

#[test]
fn eval_word_is_a_homomorphism() {
    common::eval_homomorphism().unwrap();
}

#[test]
fn grading_matches_mu() {
    common::grading().unwrap();
}

#[test]
fn level1_logs_are_traceless() {
    common::level1_traces().unwrap();
}
