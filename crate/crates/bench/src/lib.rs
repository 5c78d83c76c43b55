//! Shared fixtures for the benchmark targets.

use std::sync::Arc;

use cbct_core::{FieldSpec, SBox};

pub fn field(n: u32) -> Arc<FieldSpec> {
    Arc::new(FieldSpec::new(n).expect("supported degree"))
}

pub fn gold_map(n: u32, k: u32) -> SBox {
    SBox::power(&field(n), (1 << k) + 1)
}
