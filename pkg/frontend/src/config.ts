/** Training configuration and the documented presets. */

export interface TrainConfig {
  hiddenSize: number;
  layers: number;
  embedDim: number;
  dropout: number;
  batchSize: number;
  gradClipNorm: number;
  steps: number;
  learningRate: number;
  seed: number;
  /** evaluate and log metrics every this many steps */
  evalEvery: number;
  /** cap on sequences decoded per logged evaluation (greedy decode is slow) */
  evalSample: number;
}

export const PRESETS: Record<string, TrainConfig> = {
  // the reference configuration: 200-dim 2-layer encoder/decoder, 100-dim
  // embeddings, dropout 0.5, batch 64, grad clip 5, adam at 1e-3, 100k steps
  'paper-small': {
    hiddenSize: 200,
    layers: 2,
    embedDim: 100,
    dropout: 0.5,
    batchSize: 64,
    gradClipNorm: 5,
    steps: 100_000,
    learningRate: 0.001,
    seed: 0,
    evalEvery: 1000,
    evalSample: 64,
  },
  // same thing with the wider 300-dim encoder/decoder
  'paper-large': {
    hiddenSize: 300,
    layers: 2,
    embedDim: 100,
    dropout: 0.5,
    batchSize: 64,
    gradClipNorm: 5,
    steps: 100_000,
    learningRate: 0.001,
    seed: 0,
    evalEvery: 1000,
    evalSample: 64,
  },
  // small enough to run on a laptop CPU in minutes
  desk: {
    hiddenSize: 32,
    layers: 2,
    embedDim: 16,
    dropout: 0.1,
    batchSize: 16,
    gradClipNorm: 5,
    steps: 400,
    learningRate: 0.005,
    seed: 0,
    evalEvery: 50,
    evalSample: 48,
  },
};

export function resolveConfig(
  preset: string,
  overrides: Partial<TrainConfig> = {},
): TrainConfig {
  const base = PRESETS[preset];
  if (base === undefined) {
    throw new Error(`unknown preset ${preset}; pick one of ${Object.keys(PRESETS).join(', ')}`);
  }
  return { ...base, ...overrides };
}

/** key=value echo of the hyperparameters, in a fixed order. */
export function echoConfig(cfg: TrainConfig): string {
  return [
    `hidden_size=${cfg.hiddenSize}`,
    `layers=${cfg.layers}`,
    `embed_dim=${cfg.embedDim}`,
    `dropout=${cfg.dropout}`,
    `batch_size=${cfg.batchSize}`,
    `grad_clip_norm=${cfg.gradClipNorm}`,
    `learning_rate=${cfg.learningRate}`,
    `steps=${cfg.steps}`,
    `seed=${cfg.seed}`,
  ].join('\n');
}
