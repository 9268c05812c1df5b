// Every example runs to completion.

#[path = "../examples/assemble_entrance.rs"]
mod assemble_entrance;
#[path = "../examples/bank_checkout.rs"]
mod bank_checkout;
#[path = "../examples/cohort.rs"]
mod cohort;
#[path = "../examples/expressions.rs"]
mod expressions;
#[path = "../examples/grade_sheets.rs"]
mod grade_sheets;
#[path = "../examples/instantiate_mosca.rs"]
mod instantiate_mosca;
#[path = "../examples/number_formats.rs"]
mod number_formats;
#[path = "../examples/random_guessing.rs"]
mod random_guessing;
#[path = "../examples/render_documents.rs"]
mod render_documents;
#[path = "../examples/topic_statistics.rs"]
mod topic_statistics;
#[path = "../examples/variant_counts.rs"]
mod variant_counts;

#[test]
fn assemble_entrance_runs() {
    assemble_entrance::main().unwrap();
}

#[test]
fn bank_checkout_runs() {
    bank_checkout::main().unwrap();
}

#[test]
fn cohort_runs() {
    cohort::main().unwrap();
}

#[test]
fn expressions_runs() {
    expressions::main().unwrap();
}

#[test]
fn grade_sheets_runs() {
    grade_sheets::main().unwrap();
}

#[test]
fn instantiate_mosca_runs() {
    instantiate_mosca::main().unwrap();
}

#[test]
fn number_formats_runs() {
    number_formats::main().unwrap();
}

#[test]
fn random_guessing_runs() {
    random_guessing::main().unwrap();
}

#[test]
fn render_documents_runs() {
    render_documents::main().unwrap();
}

#[test]
fn topic_statistics_runs() {
    topic_statistics::main().unwrap();
}

#[test]
fn variant_counts_runs() {
    variant_counts::main().unwrap();
}
