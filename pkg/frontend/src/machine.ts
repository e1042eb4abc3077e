/**
 * Minimal reader for the transducer machine text format, used only for the
 * optional coverage join in evaluation reports. Training never reads the
 * machine file, so there is no way for target structure to leak into the
 * model.
 */

export interface Machine {
  nStates: number;
  start: number;
  finals: Map<number, number[]>;
  transitions: Map<string, { out: number[]; dst: number }>;
}

export class MachineParseError extends Error {}

const key = (q: number, a: number) => `${q},${a}`;

function parseOut(fields: string[]): number[] {
  if (fields.length === 1 && fields[0] === '-1') return [];
  return fields.map((f) => {
    const t = Number(f);
    if (!Number.isInteger(t) || t < 0) throw new MachineParseError(`bad token ${f}`);
    return t;
  });
}

export function parseMachine(text: string): Machine {
  let nStates: number | null = null;
  let start: number | null = null;
  const finals = new Map<number, number[]>();
  const transitions = new Map<string, { out: number[]; dst: number }>();
  let sawHeader = false;
  for (const raw of text.split('\n')) {
    const line = raw.trim();
    if (line.length === 0 || line.startsWith('#')) continue;
    if (!sawHeader) {
      if (line !== 'SFST v1') throw new MachineParseError(`expected SFST v1 header, got ${line}`);
      sawHeader = true;
      continue;
    }
    const fields = line.split(/\s+/);
    switch (fields[0]) {
      case 'STATES':
        nStates = Number(fields[1]);
        break;
      case 'START':
        start = Number(fields[1]);
        break;
      case 'FINAL':
        finals.set(Number(fields[1]), parseOut(fields.slice(2)));
        break;
      case 'TRANS':
        transitions.set(key(Number(fields[1]), Number(fields[2])), {
          out: parseOut(fields.slice(4)),
          dst: Number(fields[3]),
        });
        break;
      default:
        throw new MachineParseError(`unknown record ${fields[0]}`);
    }
  }
  if (nStates === null || start === null) {
    throw new MachineParseError('missing STATES or START record');
  }
  return { nStates, start, finals, transitions };
}

/**
 * Replay every input through the machine and count transition crossings;
 * returns the minimum count over all transitions (0 when something is never
 * crossed). Inputs the machine does not accept raise.
 */
export function minTransitionCoverage(m: Machine, inputs: number[][]): number {
  const counts = new Map<string, number>();
  for (const k of m.transitions.keys()) counts.set(k, 0);
  for (const input of inputs) {
    let q = m.start;
    for (const a of input) {
      const k = key(q, a);
      const hit = m.transitions.get(k);
      if (hit === undefined) {
        throw new MachineParseError(`input ${JSON.stringify(input)} not accepted`);
      }
      counts.set(k, (counts.get(k) ?? 0) + 1);
      q = hit.dst;
    }
  }
  let min = Infinity;
  for (const v of counts.values()) min = Math.min(min, v);
  return counts.size === 0 ? 0 : min;
}
