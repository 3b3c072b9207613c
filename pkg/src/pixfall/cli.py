"""Command-line interface exposing the full pipeline.

One executable with subcommands covering data generation, rendering,
tokenizer training, the two-stage model training, generation, and the
analysis reports.  Exit codes: 0 on success, 1 on usage errors, 2 on
runtime errors.  Report subcommands write CSV or structured text to
``--out`` with a rendered figure next to it; without ``--out`` they
print a human summary instead.  A ``--config`` JSON file supplies any
value not given as a flag; explicit flags always win.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys

import torch

from .analysis import (
    chrf_pp,
    chrf_pp_corpus,
    corpus_stats,
    flops_estimate,
    flops_ratio,
    modality_gap,
)
from .analysis.plots import (
    save_gap_scatter,
    save_length_scatter,
    save_score_histogram,
    save_training_curves,
)
from .checkpoint import load_encoder, load_lm, save_encoder, save_lm
from .data import (
    ParallelCorpus,
    gen_cipher_task,
    gen_codeswitch_task,
    load_alignments,
    load_tsv,
    save_alignments,
    save_tsv,
)
from .encoder import EncoderConfig, FallbackEncoder
from .errors import PixfallError
from .lm import DecoderLM, LMConfig
from .textrender.patchio import load_matrix, save_patches
from .textrender.render import RenderConfig, render_sequence
from .textrender.segment import pretokenize
from .tokenizer import BPETokenizer, expand_vocab
from .training.dora import attach_dora
from .training.loop import (
    TrainConfig,
    WordEncoderCache,
    train_stage1,
    train_stage2,
    translation_prompt,
)


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on usage errors; this CLI reserves 2 for
    runtime failures and reports usage errors as 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _load_config(path: str | None) -> dict:
    if not path:
        return {}
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _pick(args, cfg: dict, name: str, default):
    """Flag if given, else config-file value, else the default."""
    value = getattr(args, name)
    if value is not None:
        return value
    return cfg.get(name, default)


def _figure_path(out: str) -> str:
    return os.path.splitext(out)[0] + ".png"


# ---------------------------------------------------------------- gen-data


def _cmd_gen_data(args) -> int:
    if args.task == "cipher":
        corpus = gen_cipher_task(
            args.n, args.seed, script=args.script, permute=args.permute
        )
    else:
        corpus = gen_codeswitch_task(args.n, args.seed, args.ratio, script=args.script)
    os.makedirs(args.out, exist_ok=True)
    corpus_path = os.path.join(args.out, "corpus.tsv")
    save_tsv(corpus_path, corpus)
    wrote = [corpus_path]
    if corpus.alignments is not None:
        align_path = os.path.join(args.out, "alignments.txt")
        save_alignments(align_path, corpus.alignments)
        wrote.append(align_path)
    print(f"wrote {len(corpus.pairs)} pairs: {', '.join(wrote)}")
    return 0


# ------------------------------------------------------------------ render


def _cmd_render(args) -> int:
    with open(args.infile, "r", encoding="utf-8") as fh:
        text = fh.read()
    config = RenderConfig(patch_size=args.patch_size, font_backend=args.font)
    words = pretokenize(text)
    seq = render_sequence(words, config)
    if args.out:
        save_patches(args.out, seq)
        print(f"wrote {seq.patches.shape[0]} patches for {len(words)} words to {args.out}")
    else:
        print(f"{len(words)} words, {seq.patches.shape[0]} patches of "
              f"{config.patch_size}x{config.patch_size}x{config.channels}")
    return 0


# --------------------------------------------------------------- train-bpe


def _corpus_lines(path: str, field: str) -> list[str]:
    if field == "text":
        with open(path, "r", encoding="utf-8") as fh:
            return [line.rstrip("\n") for line in fh if line.strip()]
    corpus = load_tsv(path)
    if field == "source":
        return [s for s, _ in corpus.pairs]
    if field == "target":
        return [t for _, t in corpus.pairs]
    return [s for s, _ in corpus.pairs] + [t for _, t in corpus.pairs]


def _cmd_train_bpe(args) -> int:
    lines = _corpus_lines(args.corpus, args.field)
    tokenizer = BPETokenizer.train(lines, args.vocab_size)
    tokenizer.save(args.out)
    specials = tokenizer.model_vocab_size - tokenizer.vocab_size
    print(
        f"trained {len(tokenizer.merges)} merges, vocabulary "
        f"{tokenizer.vocab_size} (+{specials} specials)"
    )
    return 0


# ------------------------------------------------------------- train stages


def _load_corpus(args) -> ParallelCorpus:
    corpus = load_tsv(args.corpus)
    if args.alignments:
        alignments = load_alignments(args.alignments)
        if len(alignments) != len(corpus.pairs):
            raise ValueError(
                f"{len(alignments)} alignment lines for {len(corpus.pairs)} pairs"
            )
        corpus = ParallelCorpus(pairs=corpus.pairs, alignments=alignments)
    return corpus


def _model_configs(cfg: dict, mode: str, vocab_size: int):
    lm_kwargs = dict(cfg.get("lm", {}))
    lm_kwargs.setdefault("vocab_size", vocab_size)
    lm_cfg = LMConfig(**lm_kwargs)
    if mode not in ("pixel", "byte"):
        return None, lm_cfg
    enc_kwargs = dict(cfg.get("encoder", {}))
    enc_kwargs["mode"] = mode
    enc_kwargs.setdefault("d_lm", lm_cfg.d_model)
    if mode == "byte":
        enc_kwargs.setdefault("max_sequence", 2048)
    enc_cfg = EncoderConfig(**enc_kwargs)
    if enc_cfg.d_lm != lm_cfg.d_model:
        raise ValueError(
            f"encoder d_lm {enc_cfg.d_lm} must match decoder d_model {lm_cfg.d_model}"
        )
    return enc_cfg, lm_cfg


def _render_config(cfg: dict, enc_cfg: EncoderConfig | None) -> RenderConfig:
    kwargs = dict(cfg.get("render", {}))
    if enc_cfg is not None:
        kwargs.setdefault("patch_size", enc_cfg.patch_size)
        kwargs.setdefault("channels", enc_cfg.channels)
        kwargs.setdefault("max_patches", enc_cfg.max_sequence)
    return RenderConfig(**kwargs)


def _train_config(args, cfg: dict, stage: str, mode: str, out_dir: str, tag: str):
    kwargs = dict(cfg.get("train", {}))
    kwargs["stage"] = stage
    kwargs["mode"] = mode
    kwargs["total_steps"] = _pick(args, kwargs, "steps", kwargs.pop("total_steps", 1000))
    kwargs["batch_size"] = _pick(args, kwargs, "batch_size", kwargs.get("batch_size", 8))
    kwargs["seed"] = _pick(args, kwargs, "seed", kwargs.get("seed", 0))
    kwargs["align_loss"] = _pick(args, kwargs, "align_loss", kwargs.get("align_loss", True))
    kwargs["interleave"] = _pick(args, kwargs, "interleave", kwargs.get("interleave", "ascii-split"))
    kwargs["modality_prefix"] = _pick(
        args, kwargs, "modality_prefix", kwargs.get("modality_prefix", False)
    )
    kwargs.pop("steps", None)
    kwargs["log_path"] = os.path.join(out_dir, f"{tag}-log.csv")
    kwargs["checkpoint_dir"] = out_dir
    return TrainConfig(**kwargs)


def _finish_stage(out_dir, tag, encoder, lm, rows, dora=None) -> None:
    save_lm(os.path.join(out_dir, f"{tag}-lm.pxfw"), lm, dora)
    if encoder is not None:
        save_encoder(os.path.join(out_dir, f"{tag}-encoder.pxfw"), encoder)
    save_training_curves(rows, os.path.join(out_dir, f"{tag}-log.png"))
    last = rows[-1]
    print(
        f"{tag}: {len(rows)} steps, loss_ce {last.loss_ce:.4f}, "
        f"loss_align {last.loss_align:.4f}, {last.seconds:.1f}s; "
        f"checkpoints in {out_dir}"
    )


def _cmd_pretrain(args) -> int:
    cfg = _load_config(args.config)
    mode = _pick(args, cfg, "mode", "pixel")
    corpus = _load_corpus(args)
    os.makedirs(args.out, exist_ok=True)
    tokenizer = BPETokenizer.load(args.vocab)
    seed = _pick(args, cfg.get("train", {}), "seed", 0)
    torch.manual_seed(seed)

    band = (0, 0)
    if mode == "vocab+":
        if not args.new_vocab:
            raise ValueError("vocab+ pretraining needs --new-vocab")
        base = tokenizer
        new = BPETokenizer.load(args.new_vocab)
        _, lm_cfg = _model_configs(cfg, mode, base.model_vocab_size)
        lm = DecoderLM(lm_cfg)
        tokenizer, lm = expand_vocab(base, new, lm, seed, init=args.init)
        tokenizer.save(os.path.join(args.out, "merged.bpe"))
        band = (base.vocab_size, tokenizer.vocab_size)
        encoder = None
        enc_cfg = None
    else:
        enc_cfg, lm_cfg = _model_configs(cfg, mode, tokenizer.model_vocab_size)
        lm = DecoderLM(lm_cfg)
        encoder = FallbackEncoder(enc_cfg) if enc_cfg else None

    if args.resume:
        lm, _ = load_lm(f"{args.resume}-lm.pxfw")
        if encoder is not None:
            encoder = load_encoder(f"{args.resume}-encoder.pxfw")

    train_cfg = _train_config(args, cfg, "pretrain", mode, args.out, "stage1")
    if mode == "vocab+":
        train_cfg = TrainConfig(
            **{
                **train_cfg.__dict__,
                "new_rows_start": band[0],
                "new_rows_stop": band[1],
            }
        )
    rows = train_stage1(
        encoder, lm, corpus, tokenizer, train_cfg, _render_config(cfg, enc_cfg)
    )
    _finish_stage(args.out, "stage1", encoder, lm, rows)
    return 0


def _cmd_finetune(args) -> int:
    cfg = _load_config(args.config)
    mode = _pick(args, cfg, "mode", "pixel")
    corpus = _load_corpus(args)
    os.makedirs(args.out, exist_ok=True)
    tokenizer = BPETokenizer.load(args.vocab)
    seed = _pick(args, cfg.get("train", {}), "seed", 0)
    torch.manual_seed(seed)

    band = (0, 0)
    if mode == "vocab+":
        if not args.base_vocab:
            raise ValueError("vocab+ finetuning needs --base-vocab")
        base = BPETokenizer.load(args.base_vocab)
        band = (base.vocab_size, tokenizer.vocab_size)

    encoder = None
    enc_cfg = None
    if args.resume:
        lm, _ = load_lm(f"{args.resume}-lm.pxfw")
        if mode in ("pixel", "byte"):
            encoder = load_encoder(f"{args.resume}-encoder.pxfw")
            enc_cfg = encoder.cfg
    elif mode == "base":
        _, lm_cfg = _model_configs(cfg, mode, tokenizer.model_vocab_size)
        lm = DecoderLM(lm_cfg)
    else:
        raise ValueError(f"{mode} finetuning needs --resume with stage-1 checkpoints")

    train_cfg = _train_config(args, cfg, "finetune", mode, args.out, "stage2")
    if mode == "vocab+":
        train_cfg = TrainConfig(
            **{
                **train_cfg.__dict__,
                "new_rows_start": band[0],
                "new_rows_stop": band[1],
            }
        )
    adapters = attach_dora(
        lm,
        rank=train_cfg.dora_rank,
        alpha=train_cfg.dora_alpha,
        dropout=train_cfg.dora_dropout,
    )
    rows = train_stage2(
        encoder, lm, adapters, corpus, tokenizer, train_cfg,
        _render_config(cfg, enc_cfg),
    )
    dora = {
        "rank": train_cfg.dora_rank,
        "alpha": train_cfg.dora_alpha,
        "dropout": train_cfg.dora_dropout,
    }
    _finish_stage(args.out, "stage2", encoder, lm, rows, dora)
    return 0


# --------------------------------------------------------------- translate


def _cmd_translate(args) -> int:
    tokenizer = BPETokenizer.load(args.vocab)
    lm, _ = load_lm(args.model)
    lm.eval()
    encoder = None
    mode = "base"
    encode_words = None
    if args.encoder:
        encoder = load_encoder(args.encoder)
        encoder.eval()
        mode = encoder.cfg.mode
        render_cfg = RenderConfig(
            patch_size=encoder.cfg.patch_size,
            channels=encoder.cfg.channels,
            max_patches=encoder.cfg.max_sequence,
        )
        encode_words = WordEncoderCache(encoder, render_cfg).encode
    with open(args.infile, "r", encoding="utf-8") as fh:
        sources = [line.rstrip("\n") for line in fh]
    eos = tokenizer.special_id("<eos>")
    plain = tokenizer.vocab_size
    hypotheses = []
    with torch.no_grad():
        for source in sources:
            prompt = translation_prompt(
                source, tokenizer, encode_words, mode,
                args.interleave, args.modality_prefix,
            )
            ids = lm.generate(
                prompt,
                max_new_tokens=args.max_new,
                eos_id=eos,
                beam_size=args.beam,
                length_penalty=args.length_penalty,
            )
            kept = [i for i in ids if i < plain]
            hypotheses.append(tokenizer.decode(kept, errors="replace"))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            for hyp in hypotheses:
                fh.write(hyp + "\n")
    else:
        for hyp in hypotheses:
            print(hyp)
    return 0


# ---------------------------------------------------------------- evaluate


def _read_lines(path: str) -> list[str]:
    with open(path, "r", encoding="utf-8") as fh:
        return [line.rstrip("\n") for line in fh]


def _cmd_evaluate(args) -> int:
    hyps = _read_lines(args.hyp)
    refs = _read_lines(args.ref)
    corpus_score = chrf_pp_corpus(hyps, refs)
    line_scores = [chrf_pp(h, r) for h, r in zip(hyps, refs)]
    if args.out:
        with open(args.out, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["line", "chrf"])
            for i, score in enumerate(line_scores, start=1):
                writer.writerow([i, f"{score:.6f}"])
            writer.writerow(["corpus", f"{corpus_score:.6f}"])
        save_score_histogram(line_scores, _figure_path(args.out), corpus_score)
        print(f"corpus chrF++ {corpus_score:.2f}; wrote {args.out}")
    else:
        print(f"corpus chrF++ {corpus_score:.2f} over {len(hyps)} lines "
              f"(per-line mean {sum(line_scores) / len(line_scores):.2f})")
    return 0


# -------------------------------------------------------------- analyze-gap


def _cmd_analyze_gap(args) -> int:
    soft = torch.from_numpy(load_matrix(args.soft))
    vocab = torch.from_numpy(load_matrix(args.vocab))
    report = modality_gap(soft, vocab, seed=args.seed)
    lines = [
        f"centroid_distance\t{report.centroid_distance:.6f}",
        f"probe_accuracy\t{report.probe_accuracy:.6f}",
        f"n_soft\t{report.n_soft}",
        f"n_vocab\t{report.n_vocab}",
    ]
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write("\n".join(lines) + "\n")
        save_gap_scatter(soft, vocab, _figure_path(args.out))
        print(f"centroid distance {report.centroid_distance:.4f}, "
              f"probe accuracy {report.probe_accuracy:.3f}; wrote {args.out}")
    else:
        print("\n".join(lines))
    return 0


# ----------------------------------------------------------- compare-lengths


def _cmd_compare_lengths(args) -> int:
    corpus = load_tsv(args.corpus)
    tokenizer = BPETokenizer.load(args.vocab)
    lines = [s for s, _ in corpus.pairs] if args.side == "source" else [
        t for _, t in corpus.pairs
    ]
    stats, ratio = corpus_stats(lines, tokenizer)
    if args.out:
        with open(args.out, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["line", "tokens", "words", "bytes", "ratio"])
            for i, s in enumerate(stats, start=1):
                writer.writerow([i, s.n_tokens, s.n_words, s.n_bytes, f"{s.ratio:.6f}"])
            writer.writerow(["corpus", sum(s.n_tokens for s in stats),
                             sum(s.n_words for s in stats),
                             sum(s.n_bytes for s in stats), f"{ratio:.6f}"])
        save_length_scatter(stats, _figure_path(args.out), ratio)
        print(f"corpus ratio {ratio:.3f} tokens/word; wrote {args.out}")
    else:
        print(f"corpus ratio {ratio:.3f} tokens/word over {len(stats)} lines "
              f"({args.side} side)")
    return 0


# ------------------------------------------------------------------- flops


def _cmd_flops(args) -> int:
    cfg = _load_config(args.config)
    lm_kwargs = dict(cfg.get("lm", {}))
    if args.vocab:
        lm_kwargs.setdefault(
            "vocab_size", BPETokenizer.load(args.vocab).model_vocab_size
        )
    if "vocab_size" not in lm_kwargs:
        raise ValueError("flops needs lm.vocab_size in --config or a --vocab file")
    lm_cfg = LMConfig(**lm_kwargs)
    enc_cfg = None
    if cfg.get("encoder") or args.encoder_units:
        enc_kwargs = dict(cfg.get("encoder", {}))
        enc_kwargs.setdefault("d_lm", lm_cfg.d_model)
        enc_cfg = EncoderConfig(**enc_kwargs)
    report = flops_estimate(
        lm_cfg,
        args.prompt,
        args.generated,
        encoder_config=enc_cfg,
        encoder_units=args.encoder_units,
        encoder_words=args.encoder_words,
    )
    lines = [
        f"encoder_flops\t{report.encoder_flops:.6g}",
        f"lm_flops\t{report.lm_flops:.6g}",
        f"total\t{report.total:.6g}",
    ]
    if args.base_prompt is not None:
        base = flops_estimate(lm_cfg, args.base_prompt, args.generated)
        lines.append(f"base_total\t{base.total:.6g}")
        lines.append(f"ratio\t{flops_ratio(report, base):.6f}")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write("\n".join(lines) + "\n")
        print(f"total {report.total:.4g} FLOPs; wrote {args.out}")
    else:
        print("\n".join(lines))
    return 0


# ------------------------------------------------------------------ parser


def _add_train_flags(sub) -> None:
    sub.add_argument("--corpus", required=True, help="TSV parallel corpus")
    sub.add_argument("--vocab", required=True, help="byte-pair vocabulary file")
    sub.add_argument("--out", required=True, help="output directory")
    sub.add_argument("--alignments", help="Pharaoh word-alignment file")
    sub.add_argument("--mode", choices=["pixel", "byte", "vocab+", "base"])
    sub.add_argument("--steps", type=int, help="training steps")
    sub.add_argument("--batch-size", type=int, dest="batch_size")
    sub.add_argument("--seed", type=int)
    sub.add_argument("--align-loss", action=argparse.BooleanOptionalAction,
                     dest="align_loss", default=None)
    sub.add_argument("--interleave", choices=["off", "ascii-split", "force-pixels"])
    sub.add_argument("--modality-prefix", action=argparse.BooleanOptionalAction,
                     dest="modality_prefix", default=None)
    sub.add_argument("--config", help="JSON config file")
    sub.add_argument("--resume", help="checkpoint prefix to load")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pixfall", description=__doc__)
    subs = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub = subs.add_parser("gen-data", help="generate a synthetic parallel corpus")
    sub.add_argument("--task", choices=["cipher", "codeswitch"], required=True)
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--seed", type=int, required=True)
    sub.add_argument("--out", required=True, help="output directory")
    sub.add_argument("--script", choices=["cyrillic", "devanagari", "identity"],
                     default="cyrillic")
    sub.add_argument("--permute", action="store_true",
                     help="permute source word order (cipher task)")
    sub.add_argument("--ratio", type=float, default=0.25,
                     help="ASCII word probability (codeswitch task)")
    sub.set_defaults(func=_cmd_gen_data)

    sub = subs.add_parser("render", help="render text into pixel patches")
    sub.add_argument("--in", dest="infile", required=True)
    sub.add_argument("--out")
    sub.add_argument("--patch-size", type=int, default=24, dest="patch_size")
    sub.add_argument("--font", default="embedded",
                     help="'embedded' or 'system:<path>[:<pt>[:<dpi>]]'")
    sub.set_defaults(func=_cmd_render)

    sub = subs.add_parser("train-bpe", help="train a byte-pair vocabulary")
    sub.add_argument("--corpus", required=True)
    sub.add_argument("--vocab-size", type=int, default=512, dest="vocab_size")
    sub.add_argument("--out", required=True)
    sub.add_argument("--field", choices=["source", "target", "both", "text"],
                     default="target")
    sub.set_defaults(func=_cmd_train_bpe)

    sub = subs.add_parser("pretrain", help="stage 1: train the fallback encoder")
    _add_train_flags(sub)
    sub.add_argument("--new-vocab", dest="new_vocab",
                     help="second vocabulary to merge (vocab+ mode)")
    sub.add_argument("--init", choices=["random", "mean"], default="random",
                     help="new embedding row init (vocab+ mode)")
    sub.set_defaults(func=_cmd_pretrain)

    sub = subs.add_parser("finetune", help="stage 2: adapt the decoder")
    _add_train_flags(sub)
    sub.add_argument("--base-vocab", dest="base_vocab",
                     help="original vocabulary before expansion (vocab+ mode)")
    sub.set_defaults(func=_cmd_finetune)

    sub = subs.add_parser("translate", help="generate hypotheses for source lines")
    sub.add_argument("--model", required=True, help="decoder checkpoint")
    sub.add_argument("--vocab", required=True)
    sub.add_argument("--in", dest="infile", required=True)
    sub.add_argument("--encoder", help="fallback encoder checkpoint")
    sub.add_argument("--beam", type=int, default=2)
    sub.add_argument("--max-new", type=int, default=64, dest="max_new")
    sub.add_argument("--length-penalty", type=float, default=1.0,
                     dest="length_penalty")
    sub.add_argument("--interleave", choices=["off", "ascii-split", "force-pixels"],
                     default="ascii-split")
    sub.add_argument("--modality-prefix", action="store_true",
                     dest="modality_prefix")
    sub.add_argument("--out", help="write hypotheses here instead of stdout")
    sub.set_defaults(func=_cmd_translate)

    sub = subs.add_parser("evaluate", help="chrF++ report")
    sub.add_argument("--hyp", required=True)
    sub.add_argument("--ref", required=True)
    sub.add_argument("--out", help="CSV path (figure written next to it)")
    sub.set_defaults(func=_cmd_evaluate)

    sub = subs.add_parser("analyze-gap", help="modality-gap report")
    sub.add_argument("--soft", required=True, help="PXF1 matrix of soft embeddings")
    sub.add_argument("--vocab", required=True, help="PXF1 matrix of vocab embeddings")
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--out", help="report path (figure written next to it)")
    sub.set_defaults(func=_cmd_analyze_gap)

    sub = subs.add_parser("compare-lengths", help="token/word compression report")
    sub.add_argument("--corpus", required=True, help="TSV parallel corpus")
    sub.add_argument("--vocab", required=True)
    sub.add_argument("--side", choices=["source", "target"], default="source")
    sub.add_argument("--out", help="CSV path (figure written next to it)")
    sub.set_defaults(func=_cmd_compare_lengths)

    sub = subs.add_parser("flops", help="analytic cost estimate")
    sub.add_argument("--prompt", type=int, required=True,
                     help="LM prompt length in positions")
    sub.add_argument("--generated", type=int, required=True)
    sub.add_argument("--encoder-units", type=int, default=0, dest="encoder_units")
    sub.add_argument("--encoder-words", type=int, default=0, dest="encoder_words")
    sub.add_argument("--base-prompt", type=int, dest="base_prompt",
                     help="baseline prompt length for the cost ratio")
    sub.add_argument("--vocab", help="vocabulary file fixing lm vocab_size")
    sub.add_argument("--config", help="JSON config with encoder/lm sections")
    sub.add_argument("--out")
    sub.set_defaults(func=_cmd_flops)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except PixfallError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except (OSError, ValueError, KeyError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
