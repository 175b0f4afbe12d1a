//! Recurrent network trained by backpropagation through time.
//!
//! Neurons are numbered inputs first, then hidden units, then outputs. Every
//! connection carries a delay `tau`: a zero-delay connection feeds the target
//! within the same time step (these must form a DAG), a delayed one reads the
//! source's activation `tau` steps earlier, with activations before `t = 0`
//! taken as zero. Unfolding over a sequence reuses the same weight for every
//! replica, so a weight's gradient is the sum of its per-step contributions.
//!
//! All non-input units are logistic and the objective is half the sum of
//! squared output errors, which makes `delta = (d - y) y (1 - y)` at the output
//! exactly `-dE/dx`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::emotion::{EmotionVector, GROUP_COUNT};
use crate::error::{Error, Result};
use crate::mstn::{MentalState, TransitionMatrix, STATE_COUNT};

/// Inputs of the MSTN network: nine emotion groups then a one-hot current state.
pub const MSTN_INPUTS: usize = GROUP_COUNT + STATE_COUNT;
pub const DEFAULT_HIDDEN: usize = 14;
/// An epoch loss above this aborts training.
pub const DIVERGENCE_LOSS: f64 = 1e6;

pub fn sigmoid(x: f64) -> f64 {
    1.0 / (1.0 + (-x).exp())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Connection {
    pub target: usize,
    pub source: usize,
    pub delay: u32,
}

impl Connection {
    pub fn new(target: usize, source: usize, delay: u32) -> Self {
        Connection { target, source, delay }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "TopologySpec", into = "TopologySpec")]
pub struct Topology {
    n_in: usize,
    n_hidden: usize,
    n_out: usize,
    connections: Vec<Connection>,
    /// Non-input neurons in zero-delay feedforward order.
    order: Vec<usize>,
    incoming: Vec<Vec<usize>>,
    outgoing: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct TopologySpec {
    n_in: usize,
    n_hidden: usize,
    n_out: usize,
    connections: Vec<(usize, usize, u32)>,
}

impl TryFrom<TopologySpec> for Topology {
    type Error = Error;
    fn try_from(spec: TopologySpec) -> Result<Self> {
        let connections = spec
            .connections
            .into_iter()
            .map(|(t, s, d)| Connection::new(t, s, d))
            .collect();
        Topology::new(spec.n_in, spec.n_hidden, spec.n_out, connections)
    }
}

impl From<Topology> for TopologySpec {
    fn from(t: Topology) -> Self {
        TopologySpec {
            n_in: t.n_in,
            n_hidden: t.n_hidden,
            n_out: t.n_out,
            connections: t.connections.iter().map(|c| (c.target, c.source, c.delay)).collect(),
        }
    }
}

impl Topology {
    /// Connections are sorted into canonical `(target, source, delay)` order.
    pub fn new(n_in: usize, n_hidden: usize, n_out: usize, mut connections: Vec<Connection>) -> Result<Self> {
        if n_out != STATE_COUNT {
            return Err(Error::Topology(format!("network must have {STATE_COUNT} outputs, got {n_out}")));
        }
        let n = n_in + n_hidden + n_out;
        connections.sort_unstable();
        for pair in connections.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::Topology(format!("duplicate connection {:?}", pair[0])));
            }
        }
        for c in &connections {
            if c.target >= n || c.source >= n {
                return Err(Error::Topology(format!("connection {c:?} references a missing neuron")));
            }
            if c.target < n_in {
                return Err(Error::Topology(format!("connection {c:?} targets an input neuron")));
            }
        }

        let mut incoming = vec![Vec::new(); n];
        let mut outgoing = vec![Vec::new(); n];
        for (idx, c) in connections.iter().enumerate() {
            incoming[c.target].push(idx);
            outgoing[c.source].push(idx);
        }

        // Kahn's algorithm over zero-delay edges between non-input neurons.
        let mut indegree = vec![0usize; n];
        for c in &connections {
            if c.delay == 0 && c.source >= n_in {
                indegree[c.target] += 1;
            }
        }
        let mut ready: Vec<usize> = (n_in..n).filter(|&i| indegree[i] == 0).rev().collect();
        let mut order = Vec::with_capacity(n - n_in);
        while let Some(i) = ready.pop() {
            order.push(i);
            for &ci in outgoing[i].iter().rev() {
                let c = connections[ci];
                if c.delay == 0 {
                    indegree[c.target] -= 1;
                    if indegree[c.target] == 0 {
                        ready.push(c.target);
                    }
                }
            }
        }
        if order.len() != n - n_in {
            return Err(Error::Topology("cycle among zero-delay connections".into()));
        }

        Ok(Topology {
            n_in,
            n_hidden,
            n_out,
            connections,
            order,
            incoming,
            outgoing,
        })
    }

    /// The MSTN network: 16 inputs, `n_hidden` hidden units with one-step
    /// hidden-to-hidden recurrence, 7 outputs, and direct input-to-output
    /// connections that carry the baseline transition probabilities.
    pub fn mstn(n_hidden: usize) -> Result<Self> {
        if n_hidden == 0 {
            return Err(Error::Topology("hidden layer must not be empty".into()));
        }
        let n_in = MSTN_INPUTS;
        let hidden = n_in..n_in + n_hidden;
        let outputs = n_in + n_hidden..n_in + n_hidden + STATE_COUNT;
        let mut connections = Vec::new();
        for h in hidden.clone() {
            connections.extend((0..n_in).map(|i| Connection::new(h, i, 0)));
            connections.extend(hidden.clone().map(|k| Connection::new(h, k, 1)));
        }
        for o in outputs {
            connections.extend((0..n_in).map(|i| Connection::new(o, i, 0)));
            connections.extend(hidden.clone().map(|k| Connection::new(o, k, 0)));
        }
        Topology::new(n_in, n_hidden, STATE_COUNT, connections)
    }

    pub fn n_in(&self) -> usize {
        self.n_in
    }

    pub fn n_hidden(&self) -> usize {
        self.n_hidden
    }

    pub fn n_out(&self) -> usize {
        self.n_out
    }

    pub fn neuron_count(&self) -> usize {
        self.n_in + self.n_hidden + self.n_out
    }

    pub fn output_start(&self) -> usize {
        self.n_in + self.n_hidden
    }

    pub fn connections(&self) -> &[Connection] {
        &self.connections
    }

    pub fn position(&self, target: usize, source: usize, delay: u32) -> Option<usize> {
        self.connections
            .binary_search(&Connection::new(target, source, delay))
            .ok()
    }

    fn is_output(&self, neuron: usize) -> bool {
        neuron >= self.output_start()
    }
}

/// Weights aligned with [`Topology::connections`], shared by every unfolded step.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetWeights {
    values: Vec<f64>,
}

impl NetWeights {
    pub fn zeros(topo: &Topology) -> Self {
        NetWeights {
            values: vec![0.0; topo.connections.len()],
        }
    }

    pub fn from_values(topo: &Topology, values: Vec<f64>) -> Result<Self> {
        if values.len() != topo.connections.len() {
            return Err(Error::Topology(format!(
                "{} weights for {} connections",
                values.len(),
                topo.connections.len()
            )));
        }
        Ok(NetWeights { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn get(&self, topo: &Topology, target: usize, source: usize, delay: u32) -> Option<f64> {
        topo.position(target, source, delay).map(|i| self.values[i])
    }

    pub fn set(&mut self, topo: &Topology, target: usize, source: usize, delay: u32, value: f64) -> Result<()> {
        let i = topo
            .position(target, source, delay)
            .ok_or_else(|| Error::Topology(format!("no connection {target}<-{source}@{delay}")))?;
        self.values[i] = value;
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Step {
    pub input: Vec<f64>,
    pub target: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct TrainingSequence {
    pub steps: Vec<Step>,
}

impl TrainingSequence {
    pub fn new(steps: Vec<Step>) -> Self {
        TrainingSequence { steps }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    fn check(&self, topo: &Topology) -> Result<()> {
        if self.steps.is_empty() {
            return Err(Error::InvalidEpisode("training sequence is empty".into()));
        }
        for (t, step) in self.steps.iter().enumerate() {
            if step.input.len() != topo.n_in || step.target.len() != topo.n_out {
                return Err(Error::InvalidEpisode(format!(
                    "step {t} has {} inputs and {} targets, expected {} and {}",
                    step.input.len(),
                    step.target.len(),
                    topo.n_in,
                    topo.n_out
                )));
            }
        }
        Ok(())
    }
}

/// Network input for one step: the emotion vector followed by the one-hot state.
pub fn encode_input(e: &EmotionVector, current: MentalState) -> Vec<f64> {
    let mut input = Vec::with_capacity(MSTN_INPUTS);
    input.extend_from_slice(e.values());
    input.extend(one_hot(current));
    input
}

pub fn one_hot(state: MentalState) -> [f64; STATE_COUNT] {
    let mut v = [0.0; STATE_COUNT];
    v[state.index()] = 1.0;
    v
}

/// Pre-activations `x` and outputs `y` per step and neuron. Input neurons hold
/// their clamped value in both.
#[derive(Debug, Clone, PartialEq)]
pub struct ActivationTrace {
    pub x: Vec<Vec<f64>>,
    pub y: Vec<Vec<f64>>,
}

impl ActivationTrace {
    pub fn outputs(&self, topo: &Topology, t: usize) -> &[f64] {
        &self.y[t][topo.output_start()..]
    }

    /// Half the summed squared output error against `seq`.
    pub fn objective(&self, topo: &Topology, seq: &TrainingSequence) -> f64 {
        0.5 * self.sum_squared_error(topo, seq)
    }

    pub fn sum_squared_error(&self, topo: &Topology, seq: &TrainingSequence) -> f64 {
        seq.steps
            .iter()
            .enumerate()
            .map(|(t, step)| {
                self.outputs(topo, t)
                    .iter()
                    .zip(&step.target)
                    .map(|(y, d)| (d - y) * (d - y))
                    .sum::<f64>()
            })
            .sum()
    }
}

pub fn forward(weights: &NetWeights, topo: &Topology, seq: &TrainingSequence) -> Result<ActivationTrace> {
    seq.check(topo)?;
    let steps = seq.len();
    let n = topo.neuron_count();
    let mut xs = vec![vec![0.0; n]; steps];
    let mut ys = vec![vec![0.0; n]; steps];
    for t in 0..steps {
        for i in 0..topo.n_in {
            xs[t][i] = seq.steps[t].input[i];
            ys[t][i] = seq.steps[t].input[i];
        }
        for &neuron in &topo.order {
            let mut x = 0.0;
            for &ci in &topo.incoming[neuron] {
                let c = topo.connections[ci];
                let d = c.delay as usize;
                if d <= t {
                    x += weights.values[ci] * ys[t - d][c.source];
                }
            }
            xs[t][neuron] = x;
            ys[t][neuron] = sigmoid(x);
        }
    }
    Ok(ActivationTrace { x: xs, y: ys })
}

/// Ascent direction `-dE/dw` for every shared weight, plus the squared error.
#[derive(Debug, Clone, PartialEq)]
pub struct Gradients {
    pub values: Vec<f64>,
    pub sum_squared_error: f64,
}

pub fn bptt_gradients(weights: &NetWeights, topo: &Topology, seq: &TrainingSequence) -> Result<Gradients> {
    let trace = forward(weights, topo, seq)?;
    Ok(gradients_from_trace(weights, topo, seq, &trace))
}

pub fn gradients_from_trace(
    weights: &NetWeights,
    topo: &Topology,
    seq: &TrainingSequence,
    trace: &ActivationTrace,
) -> Gradients {
    let steps = seq.len();
    let n = topo.neuron_count();
    let mut delta = vec![vec![0.0; n]; steps];
    for t in (0..steps).rev() {
        for &neuron in topo.order.iter().rev() {
            let y = trace.y[t][neuron];
            let mut err = if topo.is_output(neuron) {
                seq.steps[t].target[neuron - topo.output_start()] - y
            } else {
                0.0
            };
            for &ci in &topo.outgoing[neuron] {
                let c = topo.connections[ci];
                let later = t + c.delay as usize;
                if later < steps {
                    err += weights.values[ci] * delta[later][c.target];
                }
            }
            delta[t][neuron] = y * (1.0 - y) * err;
        }
    }

    let values = topo
        .connections
        .iter()
        .map(|c| {
            let d = c.delay as usize;
            (d..steps)
                .map(|t| delta[t][c.target] * trace.y[t - d][c.source])
                .sum()
        })
        .collect();
    Gradients {
        values,
        sum_squared_error: trace.sum_squared_error(topo, seq),
    }
}

/// `w <- w + alpha * g` for every weight.
pub fn update_weights(weights: &NetWeights, topo: &Topology, grads: &[f64], alpha: f64) -> Result<NetWeights> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::Config(format!("learning rate {alpha} must be positive")));
    }
    if grads.len() != weights.values.len() {
        return Err(Error::Topology("gradient length does not match weights".into()));
    }
    if let Some((i, &value)) = grads.iter().enumerate().find(|(_, g)| !g.is_finite()) {
        let c = topo.connections[i];
        return Err(Error::NonFiniteGradient {
            target: c.target,
            from: c.source,
            delay: c.delay,
            value,
        });
    }
    Ok(NetWeights {
        values: weights
            .values
            .iter()
            .zip(grads)
            .map(|(w, g)| w + alpha * g)
            .collect(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrainConfig {
    pub alpha: f64,
    pub epochs: usize,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            alpha: 0.05,
            epochs: 300,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainOutcome {
    pub weights: NetWeights,
    /// Summed squared error of each epoch, measured on the weights each
    /// sequence saw before its own update.
    pub loss_curve: Vec<f64>,
}

/// One BPTT update per sequence per epoch, in the order given.
pub fn train(weights: &NetWeights, topo: &Topology, data: &[TrainingSequence], config: &TrainConfig) -> Result<TrainOutcome> {
    if config.epochs == 0 {
        return Err(Error::Config("epochs must be at least 1".into()));
    }
    let mut current = weights.clone();
    let mut loss_curve = Vec::with_capacity(config.epochs);
    for epoch in 0..config.epochs {
        let mut loss = 0.0;
        for seq in data {
            let grads = bptt_gradients(&current, topo, seq)?;
            loss += grads.sum_squared_error;
            current = update_weights(&current, topo, &grads.values, config.alpha)?;
        }
        if !(loss <= DIVERGENCE_LOSS) {
            return Err(Error::Diverged { epoch, loss });
        }
        loss_curve.push(loss);
    }
    Ok(TrainOutcome {
        weights: current,
        loss_curve,
    })
}

/// Seeded initialization. Direct context-input to output connections get
/// `scale * p[i][j]`; every other weight is uniform in `[-0.1, 0.1]`.
pub fn init_weights(topo: &Topology, base: &TransitionMatrix, scale: f64, seed: u64) -> Result<NetWeights> {
    if topo.n_in < STATE_COUNT {
        return Err(Error::Topology("no context block among the inputs".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut values: Vec<f64> = topo
        .connections
        .iter()
        .map(|_| rng.gen_range(-0.1..=0.1))
        .collect();
    let context_start = topo.n_in - STATE_COUNT;
    let out_start = topo.output_start();
    for (i, c) in topo.connections.iter().enumerate() {
        if c.delay == 0 && c.source >= context_start && c.source < topo.n_in && c.target >= out_start {
            let from = MentalState::from_index(c.source - context_start);
            let to = MentalState::from_index(c.target - out_start);
            values[i] = scale * base.get(from, to);
        }
    }
    Ok(NetWeights { values })
}

/// Versioned weights document: topology header and flat weight list in
/// canonical `(target, source, delay)` order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetDocument {
    pub version: u32,
    pub topology: Topology,
    pub weights: NetWeights,
}

pub const NET_DOCUMENT_VERSION: u32 = 1;

impl NetDocument {
    pub fn new(topology: Topology, weights: NetWeights) -> Self {
        NetDocument {
            version: NET_DOCUMENT_VERSION,
            topology,
            weights,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.version != NET_DOCUMENT_VERSION {
            return Err(Error::UnsupportedVersion {
                found: self.version.to_string(),
                expected: NET_DOCUMENT_VERSION.to_string(),
            });
        }
        if self.weights.values.len() != self.topology.connections.len() {
            return Err(Error::Topology("weight count does not match topology".into()));
        }
        Ok(())
    }
}
