// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Transvection groups on symplectic F2-spaces and the graphs they induce.

pub mod error;
pub mod f2;
pub mod graphs;
pub mod harness;
pub mod group;
pub mod mutation;
pub mod construct;
pub mod instance;
pub mod trees;

pub use error::{Error, Result};
