//! Acceptance gate; run with `cargo test -p hodge-residue-acceptance`.
