/* tslint:disable */
/* eslint-disable */

/**
 * JSON array of `{x, roots}`.
 */
export function meander_curve(n: number, x_min: number, x_max: number, steps: number): string;

/**
 * JSON array of ray samples `{t, re, im, value, tail_bound, terms, flag}`.
 */
export function ray_trace(x: number, shift: number, c: number, alpha: number, lambda: number, theta: number, t_max: number, t_step: number, tol: number): string;

/**
 * One byte per pixel: 0 inside the residual set, 1 removed, 2 undecided.
 */
export function residual_image(meander: boolean, c: number, alpha: number, lambda: number, width: number, height: number, re_min: number, re_max: number, im_min: number, im_max: number, cutoff: number): Uint8Array;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly meander_curve: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly ray_trace: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number, i: number) => [number, number, number, number];
    readonly residual_image: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number, i: number, j: number, k: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __externref_table_dealloc: (a: number) => void;
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
