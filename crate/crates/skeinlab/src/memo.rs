//! A memo table that many evaluator threads can share.

use std::collections::HashMap;
use std::sync::RwLock;

use skeinlab_core::{MemoStore, Scalar};

/// Keys are [`MorseWord::key_bytes`](skeinlab_core::MorseWord::key_bytes).
/// Racing inserts of one key store equal values, so the last writer wins.
#[derive(Default, Debug)]
pub struct SharedMemo(RwLock<HashMap<Vec<u8>, Scalar>>);

impl MemoStore for SharedMemo {
    fn get(&self, key: &[u8]) -> Option<Scalar> {
        self.0.read().expect("memo lock").get(key).cloned()
    }

    fn insert(&self, key: Vec<u8>, value: Scalar) {
        self.0.write().expect("memo lock").insert(key, value);
    }

    fn len(&self) -> usize {
        self.0.read().expect("memo lock").len()
    }
}
