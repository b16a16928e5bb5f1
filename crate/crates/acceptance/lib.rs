//! Host package for the katokit acceptance suite.
