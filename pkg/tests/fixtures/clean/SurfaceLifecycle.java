package app.media;

import android.media.MediaPlayer;
import android.view.SurfaceHolder;

public class SurfaceLifecycle implements SurfaceHolder.Callback {
    private MediaPlayer player;

    public void surfaceCreated(SurfaceHolder holder) {
        player = new MediaPlayer();
    }

    public void surfaceDestroyed(SurfaceHolder holder) {
        player.release();
    }
}
