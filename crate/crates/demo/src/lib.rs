//! Browser demo (filled in later).
