// Copyright 2026 lindblad-fidelity contributors
// SPDX-License-Identifier: Apache-2.0

//! Command-line pipeline for fidelity predictions and Lindblad simulations:
//! JSON scenario configs in, machine-readable reports out, plus a
//! self-contained claim-by-claim verification suite.

pub mod config;
pub mod gates;
pub mod report;
pub mod runner;
pub mod verify;
