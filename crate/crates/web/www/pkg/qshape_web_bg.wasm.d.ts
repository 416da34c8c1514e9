/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const resonance_explorer: (a: number, b: number, c: number, d: number) => [number, number];
export const thermal_explorer: (a: number, b: number, c: number, d: number) => [number, number];
export const voigt_explorer: (a: number, b: number) => [number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
