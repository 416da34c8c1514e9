/* tslint:disable */
/* eslint-disable */

/**
 * Series-RLC resonance with an optional shunt capacitance ratio `r`.
 */
export function resonance_explorer(q: number, r: number, alpha: number, count: number): string;

/**
 * Curve and full report for `X^M/(e^X + n)` at crossing level `alpha`.
 */
export function thermal_explorer(m: number, n: number, alpha: number, count: number): string;

/**
 * Peak-normalized Voigt profile for a Lorentzian/Gaussian width ratio γ/σ.
 */
export function voigt_explorer(gamma_over_sigma: number, count: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly resonance_explorer: (a: number, b: number, c: number, d: number) => [number, number];
    readonly thermal_explorer: (a: number, b: number, c: number, d: number) => [number, number];
    readonly voigt_explorer: (a: number, b: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
