//! The narrative guide under `book/`, compiled as doc-tests so its code
//! snippets stay in sync with the crate.
