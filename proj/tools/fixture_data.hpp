// SPDX-License-Identifier: Apache-2.0
// Synthetic desk-scale corpus for tests and cassette generation: four small
// C projects with planted weaknesses (buffer handling, out-of-bounds reads,
// use-after-free, NULL dereference), their patched counterparts, call-graph
// context, and the reference negotiation transcripts.
#pragma once

#include <string>
#include <vector>

namespace fixture_data {

struct PairSpec {
    std::string pair_id;
    std::string project_id;
    std::string function_name;
    std::string pre_code;
    std::string post_code;
    std::vector<std::string> cwe_ids;
    std::string cve_description;
    std::string patch_diff;
    std::string commit_message;
};

struct ContextFn {
    std::string name;
    std::string body;
    std::vector<std::string> callers;
    std::vector<std::string> callees;
};

struct ProjectContext {
    std::string project_id;
    std::vector<ContextFn> functions;
};

// ---------------------------------------------------------------------------
// cdfio: compound-document sector reader

inline const std::string kCdfReadShortSectorPre = R"C(static ssize_t
cdf_read_short_sector(const cdf_stream_t *sst, void *buf, size_t offs,
    size_t len, const cdf_header_t *h, cdf_secid_t id)
{
	size_t ss = CDF_SHORT_SEC_SIZE(h);
	size_t pos = CDF_SHORT_SEC_POS(h, id);
	assert(ss == len);
	if (pos > CDF_SEC_SIZE(h) * sst->sst_len) {
		DPRINTF(("Out of bounds read %" SIZE_T_FORMAT "u\n",
		    pos, CDF_SEC_SIZE(h) * sst->sst_len));
		return -1;
	}
	(void)memcpy(((char *)buf) + offs,
	    ((const char *)sst->sst_tab) + pos, len);
	return (ssize_t)len;
}
)C";

inline const std::string kCdfReadShortSectorPost = R"C(static ssize_t
cdf_read_short_sector(const cdf_stream_t *sst, void *buf, size_t offs,
    size_t len, const cdf_header_t *h, cdf_secid_t id)
{
	size_t ss = CDF_SHORT_SEC_SIZE(h);
	size_t pos = CDF_SHORT_SEC_POS(h, id);
	if (pos + len > CDF_SEC_SIZE(h) * sst->sst_len) {
		DPRINTF(("Out of bounds read %" SIZE_T_FORMAT "u\n",
		    pos, CDF_SEC_SIZE(h) * sst->sst_len));
		return -1;
	}
	if (ss != len) {
		DPRINTF(("short sector size mismatch %" SIZE_T_FORMAT "u\n", ss));
		return -1;
	}
	(void)memcpy(((char *)buf) + offs,
	    ((const char *)sst->sst_tab) + pos, len);
	return (ssize_t)len;
}
)C";

inline const std::string kCdfReadShortSectorChain = R"C(static ssize_t
cdf_read_short_sector_chain(const cdf_header_t *h, const cdf_sat_t *sat,
    const cdf_stream_t *sst, cdf_secid_t sid, size_t len, cdf_stream_t *scn)
{
	size_t ss = CDF_SHORT_SEC_SIZE(h), i, j;
	scn->sst_len = CDF_LOOP_LIMIT(len, ss);
	scn->sst_dirlen = len;
	scn->sst_ss = ss;
	if (scn->sst_len == (size_t)-1)
		goto out;
	scn->sst_tab = calloc(scn->sst_len, ss);
	if (scn->sst_tab == NULL)
		return -1;
	for (j = i = 0; sid >= 0; i++, j++) {
		if (j >= CDF_LOOP_LIMIT(len, ss)) {
			DPRINTF(("Loop limit, failing\n"));
			goto out;
		}
		if (cdf_read_short_sector(sst, scn->sst_tab, i * ss, ss, h,
		    sid) != (ssize_t)ss) {
			DPRINTF(("Reading short sector chain %d", sid));
			goto out;
		}
		sid = CDF_TOLE4((uint32_t)sat->sat_tab[sid]);
	}
	return (ssize_t)i;
out:
	free(scn->sst_tab);
	return -1;
}
)C";

inline const std::string kCdfReadUserStream = R"C(static int
cdf_read_user_stream(const cdf_info_t *info, const cdf_header_t *h,
    const cdf_sat_t *sat, const cdf_sat_t *ssat, const cdf_stream_t *sst,
    const cdf_dir_t *dir, const char *name, cdf_stream_t *scn)
{
	const cdf_directory_t *d;
	int i = cdf_find_stream(dir, name, CDF_DIR_TYPE_USER_STREAM);
	if (i <= 0)
		return -1;
	d = &dir->dir_tab[i - 1];
	return cdf_read_short_sector_chain(h, ssat, sst, d->d_stream_first_sector,
	    CDF_TOLE4(d->d_size), scn);
}
)C";

inline const std::string kCdfReadPropertyInfoPre = R"C(static int
cdf_read_property_info(const cdf_stream_t *sst, uint32_t offs,
    cdf_property_info_t **info, size_t *count, size_t *maxcount)
{
	const cdf_section_header_t *shp;
	const uint8_t *p, *q, *e;
	size_t i;

	shp = CAST(const cdf_section_header_t *, sst->sst_tab);
	p = CAST(const uint8_t *, sst->sst_tab) + offs;
	e = p + CDF_SECTION_DECLARED_SIZE(shp);
	for (i = 0; i < *count; i++) {
		q = p + CDF_PROP_OFFSET(p, i);
		(*info)[i].pi_id = CDF_GETUINT32(q, 0);
		(*info)[i].pi_type = CDF_GETUINT32(q, 1);
	}
	return 0;
}
)C";

inline const std::string kCdfReadPropertyInfoPost = R"C(static int
cdf_read_property_info(const cdf_stream_t *sst, uint32_t offs,
    cdf_property_info_t **info, size_t *count, size_t *maxcount)
{
	const cdf_section_header_t *shp;
	const uint8_t *p, *q, *e;
	size_t i;

	shp = CAST(const cdf_section_header_t *, sst->sst_tab);
	p = CAST(const uint8_t *, sst->sst_tab) + offs;
	e = p + CDF_SECTION_DECLARED_SIZE(shp);
	if (e > CAST(const uint8_t *, sst->sst_tab) + CDF_STREAM_SIZE(sst))
		return -1;
	for (i = 0; i < *count; i++) {
		q = p + CDF_PROP_OFFSET(p, i);
		if (q + 2 * sizeof(uint32_t) > e)
			return -1;
		(*info)[i].pi_id = CDF_GETUINT32(q, 0);
		(*info)[i].pi_type = CDF_GETUINT32(q, 1);
	}
	return 0;
}
)C";

inline const std::string kCdfUnpackSummaryInfo = R"C(static int
cdf_unpack_summary_info(const cdf_stream_t *sst, const cdf_header_t *h,
    cdf_summary_info_header_t *ssi, cdf_property_info_t **info, size_t *count)
{
	size_t maxcount = 0;
	const cdf_summary_info_header_t *si =
	    CAST(const cdf_summary_info_header_t *, sst->sst_tab);
	ssi->si_byte_order = CDF_TOLE2(si->si_byte_order);
	ssi->si_count = CDF_TOLE4(si->si_count);
	return cdf_read_property_info(sst, CDF_TOLE4(si->si_offset), info,
	    count, &maxcount);
}
)C";

// ---------------------------------------------------------------------------
// imgdec: toy image decoder

inline const std::string kImgPaletteLoadPre = R"C(static int
img_palette_load(img_ctx_t *ctx, const uint8_t *data, size_t len)
{
	uint8_t ncolors = data[0];
	uint8_t palette[256 * 3];

	memcpy(palette, data + 1, ncolors * 4);
	ctx->ncolors = ncolors;
	memcpy(ctx->palette, palette, sizeof(palette));
	return 0;
}
)C";

inline const std::string kImgPaletteLoadPost = R"C(static int
img_palette_load(img_ctx_t *ctx, const uint8_t *data, size_t len)
{
	uint8_t ncolors;
	uint8_t palette[256 * 3];

	if (len < 1)
		return -1;
	ncolors = data[0];
	if ((size_t)ncolors * 3 + 1 > len)
		return -1;
	memcpy(palette, data + 1, (size_t)ncolors * 3);
	ctx->ncolors = ncolors;
	memcpy(ctx->palette, palette, sizeof(palette));
	return 0;
}
)C";

inline const std::string kImgDecodeHeader = R"C(static int
img_decode_header(img_ctx_t *ctx, const uint8_t *data, size_t len)
{
	if (len < IMG_HDR_SIZE)
		return -1;
	ctx->width = img_get_u16(data + 0);
	ctx->height = img_get_u16(data + 2);
	ctx->stride = ctx->width * 3;
	return img_palette_load(ctx, data + 4, len - 4);
}
)C";

inline const std::string kImgRowCopyPre = R"C(static void
img_row_copy(const img_ctx_t *ctx, uint8_t *dst, int row)
{
	const uint8_t *src = ctx->data + (size_t)row * ctx->stride;
	memcpy(dst, src, ctx->stride);
}
)C";

inline const std::string kImgRowCopyPost = R"C(static void
img_row_copy(const img_ctx_t *ctx, uint8_t *dst, int row)
{
	const uint8_t *src;

	if (row < 0 || row >= ctx->height)
		return;
	src = ctx->data + (size_t)row * ctx->stride;
	memcpy(dst, src, ctx->stride);
}
)C";

inline const std::string kImgRender = R"C(static int
img_render(const img_ctx_t *ctx, uint8_t *canvas, int first_row, int nrows)
{
	for (int r = 0; r < nrows; r++)
		img_row_copy(ctx, canvas + (size_t)r * ctx->stride,
		    first_row + r);
	return 0;
}
)C";

inline const std::string kImgFreeCtxPre = R"C(void
img_free_ctx(img_ctx_t *ctx)
{
	free(ctx->data);
	if (ctx->done_cb != NULL)
		ctx->done_cb(ctx->data, ctx->cb_arg);
	free(ctx);
}
)C";

inline const std::string kImgFreeCtxPost = R"C(void
img_free_ctx(img_ctx_t *ctx)
{
	if (ctx->done_cb != NULL)
		ctx->done_cb(ctx->data, ctx->cb_arg);
	free(ctx->data);
	free(ctx);
}
)C";

inline const std::string kImgClose = R"C(void
img_close(img_handle_t *h)
{
	if (h->ctx != NULL)
		img_free_ctx(h->ctx);
	h->ctx = NULL;
}
)C";

// ---------------------------------------------------------------------------
// netmsg: wire-protocol parser

inline const std::string kMsgParseHeaderPre = R"C(static int
msg_parse_header(conn_t *c, const uint8_t *buf, size_t len)
{
	msg_hdr_t *hdr;

	if (len < MSG_HDR_MIN)
		return -1;
	hdr = msg_alloc_hdr(c);
	hdr->version = buf[0];
	hdr->opcode = buf[1];
	hdr->len = msg_decode_len(buf + 2, len - 2);
	return msg_dispatch(c, hdr);
}
)C";

inline const std::string kMsgParseHeaderPost = R"C(static int
msg_parse_header(conn_t *c, const uint8_t *buf, size_t len)
{
	msg_hdr_t *hdr;

	if (len < MSG_HDR_MIN)
		return -1;
	hdr = msg_alloc_hdr(c);
	if (hdr == NULL)
		return -1;
	hdr->version = buf[0];
	hdr->opcode = buf[1];
	hdr->len = msg_decode_len(buf + 2, len - 2);
	return msg_dispatch(c, hdr);
}
)C";

inline const std::string kMsgOnRead = R"C(static void
msg_on_read(conn_t *c)
{
	while (c->in_len >= MSG_HDR_MIN) {
		if (msg_parse_header(c, c->in_buf, c->in_len) < 0) {
			conn_abort(c);
			return;
		}
		conn_consume(c);
	}
}
)C";

/// Deliberately long decode table; exercises observation truncation.
std::string msg_decode_len_body();

inline const std::string kMsgQueuePopPre = R"C(static msg_t *
msg_queue_pop(msg_queue_t *q)
{
	msg_t *m = q->head;

	if (m == NULL)
		return NULL;
	q->head = m->next;
	if (q->head == NULL)
		q->tail = NULL;
	msg_release(m);
	return m;
}
)C";

inline const std::string kMsgQueuePopPost = R"C(static msg_t *
msg_queue_pop(msg_queue_t *q)
{
	msg_t *m = q->head;

	if (m == NULL)
		return NULL;
	q->head = m->next;
	if (q->head == NULL)
		q->tail = NULL;
	m->next = NULL;
	return m;
}
)C";

inline const std::string kMsgLoop = R"C(static void
msg_loop(msg_queue_t *q)
{
	msg_t *m;

	while ((m = msg_queue_pop(q)) != NULL) {
		msg_handle(m);
		msg_release(m);
	}
}
)C";

inline const std::string kMsgChecksumPre = R"C(static uint16_t
msg_checksum(const uint8_t *buf, size_t len)
{
	uint32_t sum = 0;
	size_t i;

	for (i = 0; i <= len; i++)
		sum += buf[i];
	return (uint16_t)(sum & 0xffff);
}
)C";

inline const std::string kMsgChecksumPost = R"C(static uint16_t
msg_checksum(const uint8_t *buf, size_t len)
{
	uint32_t sum = 0;
	size_t i;

	for (i = 0; i < len; i++)
		sum += buf[i];
	return (uint16_t)(sum & 0xffff);
}
)C";

inline const std::string kMsgVerify = R"C(static int
msg_verify(const msg_t *m)
{
	if (msg_checksum(m->payload, m->payload_len) != m->csum)
		return -1;
	return 0;
}
)C";

// ---------------------------------------------------------------------------
// strfmt: string utilities

inline const std::string kStrExpandPre = R"C(static char *
str_expand(const char *src, size_t n)
{
	char buf[64];
	size_t i, j = 0;

	for (i = 0; i < n; i++) {
		if (src[i] == '%') {
			strcpy(buf + j, "%%");
			j += 2;
		} else {
			buf[j++] = src[i];
		}
	}
	buf[j] = '\0';
	return strdup(buf);
}
)C";

inline const std::string kStrExpandPost = R"C(static char *
str_expand(const char *src, size_t n)
{
	char buf[64];
	size_t i, j = 0;

	for (i = 0; i < n; i++) {
		if (j + 3 >= sizeof(buf))
			break;
		if (src[i] == '%') {
			strcpy(buf + j, "%%");
			j += 2;
		} else {
			buf[j++] = src[i];
		}
	}
	buf[j] = '\0';
	return strdup(buf);
}
)C";

inline const std::string kStrRender = R"C(char *
str_render(const template_t *t)
{
	return str_expand(t->raw, t->raw_len);
}
)C";

inline const std::string kStrTokNextPre = R"C(static char *
str_tok_next(tok_state_t *st)
{
	char *p = strchr(st->cur, st->sep);

	*p = '\0';
	st->last = st->cur;
	st->cur = p + 1;
	return st->last;
}
)C";

inline const std::string kStrTokNextPost = R"C(static char *
str_tok_next(tok_state_t *st)
{
	char *p = strchr(st->cur, st->sep);

	if (p == NULL)
		return NULL;
	*p = '\0';
	st->last = st->cur;
	st->cur = p + 1;
	return st->last;
}
)C";

inline const std::string kStrSplit = R"C(size_t
str_split(tok_state_t *st, char **out, size_t max)
{
	size_t n = 0;
	char *tok;

	while (n < max && (tok = str_tok_next(st)) != NULL)
		out[n++] = tok;
	return n;
}
)C";

std::vector<PairSpec> corpus_pairs();
std::vector<ProjectContext> project_contexts();

// ---------------------------------------------------------------------------
// Reference negotiation transcripts (cdfio-0001). Turn texts are exactly
// what the scripted model emits; the architect and judge replies use the
// loose Python-style JSON the pipeline must tolerate.

inline const std::string kApxR1Analyst1 =
    "Thought: To determine if the function `cdf_read_short_sector` is vulnerable, I need to "
    "first examine its source code. This will allow me to identify any potential security "
    "issues such as buffer overflows, use-after-free errors, or other common vulnerabilities. "
    "\n\nAction: get_function_body\nAction Input: cdf_read_short_sector\n";

inline const std::string kApxR1Analyst2 =
    "Thought: To further assess the function's security, I should check its interactions with "
    "other functions, especially those that might influence the values of `len`, `pos`, or the "
    "buffer sizes.\n\nAction: get_callers\nAction Input: cdf_read_short_sector\n";

inline const std::string kApxR1Analyst3 =
    "Thought: To proceed, I will examine the body of the `cdf_read_short_sector_chain` "
    "function to understand how it calls `cdf_read_short_sector` and what kind of data it "
    "passes to it.\n\nAction: get_function_body\nAction Input: cdf_read_short_sector_chain\n";

inline const std::string kApxR1Analyst4 = R"TXT(Thought: I now know the final answer

Final Answer:
```json
{
  "is_vulnerable": false,
  "vulnerability_type": "None",
  "cwe_id": "N/A",
  "explanation": "The function `cdf_read_short_sector` is protected against common vulnerabilities such as buffer overflows and out-of-bounds memory access. It includes boundary checks before performing memory operations, and its caller function `cdf_read_short_sector_chain` ensures that parameters are validated and memory is properly allocated. The use of `calloc` and error handling further reduce the risk of security issues."
}
```
)TXT";

inline const std::string kApxR1Architect = R"TXT({
"agreement": False,
"feedback": "The analyst's conclusion that the function `cdf_read_short_sector` is not vulnerable is premature and overlooks several critical aspects.

Firstly, the reliance on `assert(ss == len)` is problematic because assertions can be disabled in production builds, potentially allowing unchecked conditions that could lead to buffer overflows if `len` is not equal to `ss`. This is a violation of CWE-617 (Reachable Assertion). Secondly, while the analyst correctly identifies the boundary check for `pos`, they fail to consider the implications if `len` exceeds the size of the destination buffer `buf`. The function assumes that `buf` has enough space starting from `offs`, but this assumption is not validated, which could lead to a buffer overflow (CWE-120). Additionally, the analyst's assessment of the caller function `cdf_read_short_sector_chain` does not address whether the size of `buf` is appropriately managed or validated, which is crucial for ensuring safe memory operations.

To address these concerns, the analyst should ensure that the size of `buf` is validated against `len` before performing `memcpy`, and replace the `assert` with a proper runtime check that cannot be disabled. Furthermore, a thorough review of how `buf` is allocated and managed in the caller function should be conducted to ensure it is sufficiently sized for the operations performed."
}
)TXT";

inline const std::string kApxR2Analyst1 = R"TXT(Thought: The critique highlights several potential vulnerabilities in the `cdf_read_short_sector` function that were overlooked in the previous analysis. Specifically, it points out the reliance on `assert(ss == len)`, which can be disabled in production builds, leading to unchecked conditions. Additionally, it raises concerns about the potential for a buffer overflow if `len` exceeds the size of the destination buffer `buf`, as this is not validated within the function.

To address these concerns, I need to:
1. Verify the use of `assert` and consider replacing it with a runtime check.
2. Ensure that the size of `buf` is validated against `len` before performing `memcpy`.
3. Investigate how `buf` is allocated and managed in the caller function to ensure it is sufficiently sized.

First, I will retrieve the function body to review the use of `assert` and the `memcpy` operation.

Action: get_function_body
Action Input: "cdf_read_short_sector"
)TXT";

inline const std::string kApxR2Analyst2 = R"TXT(Thought: The function `cdf_read_short_sector` uses an `assert` statement to check if `ss` is equal to `len`. This is problematic because assertions can be disabled in production builds, potentially allowing unchecked conditions that could lead to buffer overflows if `len` is not equal to `ss`. This is a violation of CWE-617 (Reachable Assertion).

Additionally, the function performs a `memcpy` operation without validating that the destination buffer `buf` has enough space starting from `offs` to accommodate `len` bytes. This could lead to a buffer overflow (CWE-120) if `len` exceeds the size of the destination buffer `buf`.

Final Answer: ```json
{
  "is_vulnerable": true,
  "vulnerability_type": "Buffer Overflow",
  "cwe_id": "CWE-120",
  "explanation": "The function `cdf_read_short_sector` is vulnerable to buffer overflow due to the lack of validation for the size of the destination buffer `buf` against `len` before performing `memcpy`. The function assumes that `buf` has enough space starting from `offs` to accommodate `len` bytes, which is not explicitly checked. This could lead to a buffer overflow if `len` exceeds the size of `buf`. Additionally, the use of `assert(ss == len)` is problematic because assertions can be disabled in production builds, potentially allowing unchecked conditions that could lead to buffer overflows if `len` is not equal to `ss`. This is a violation of CWE-617 (Reachable Assertion). To mitigate these vulnerabilities, the function should include proper runtime checks to ensure that `buf` is sufficiently sized for the operations performed, and replace the `assert` with a runtime check that cannot be disabled."
}
```
)TXT";

inline const std::string kApxR2Architect = R"TXT({
"agreement": True,
"feedback": "The analyst's reasoning is sound and complete. They correctly identified the vulnerabilities in the `cdf_read_short_sector` function, specifically the reliance on `assert(ss == len)` which can be disabled in production builds, leading to unchecked conditions. This is a violation of CWE-617 (Reachable Assertion). Additionally, they noted the lack of validation for the size of the destination buffer `buf` against `len` before performing `memcpy`, which could lead to a buffer overflow (CWE-120). The analyst's suggestion to replace the `assert` with a runtime check and ensure proper validation of the buffer size is appropriate and aligns with established security principles."
}
)TXT";

inline const std::string kApxJudgePre = R"TXT({
"prediction": 'MATCH',
"rationale": "The agent correctly identified the function `cdf_read_short_sector` as vulnerable to a buffer overflow, which aligns with the ground truth's description of a vulnerability related to improper size checks leading to potential assertion failures. Although the agent identified CWE-120 and the ground truth lists CWE-119, both relate to buffer overflow issues. The agent also noted the problematic use of assertions, which is consistent with the ground truth's mention of assertion failures. Therefore, the agent's analysis matches the ground truth vulnerability context."
}
)TXT";

inline const std::string kApxPostAnalyst1 =
    "Thought: The patched reader validates both the copy bounds and the sector size before "
    "the memcpy, but I should confirm how the caller allocates the destination table before "
    "concluding.\n\nAction: get_callers\nAction Input: cdf_read_short_sector\n";

inline const std::string kApxPostAnalyst2 = R"TXT(Thought: I now know the final answer

Final Answer: ```json
{
  "is_vulnerable": false,
  "vulnerability_type": "None",
  "cwe_id": "N/A",
  "explanation": "The function now rejects any read where pos + len would exceed the allocated sector table and returns an error when the computed short-sector size disagrees with len, replacing the earlier assertion. Together with the calloc-based allocation in cdf_read_short_sector_chain, the memcpy operates strictly within the allocated bounds."
}
```
)TXT";

inline const std::string kApxPostArchitect = R"TXT({
"agreement": true,
"feedback": "The analysis is sound and complete. The runtime bounds check on pos + len and the explicit sector-size comparison close the previously reported overflow paths, and the caller allocates the destination with calloc sized from the same limits."
}
)TXT";

inline const std::string kApxJudgePost = R"TXT({
"prediction": "MATCH",
"rationale": "The agent correctly identified the function as non-vulnerable and provided a sound explanation: the patched version validates the copy bounds and sector size that the ground truth patch introduced."
}
)TXT";

} // namespace fixture_data
