//! End-to-end acceptance checks for `coopgap`, kept in their own package so
//! they run after every other suite. See `tests/acceptance.rs`.
