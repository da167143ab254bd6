package app.media;

import android.media.MediaPlayer;
import android.view.SurfaceHolder;

public class LifecycleNoReleaser implements SurfaceHolder.Callback {
    private MediaPlayer player;

    public void surfaceCreated(SurfaceHolder holder) {
        player = new MediaPlayer();
        player.setDisplay(holder);
    }

    public void surfaceChanged(SurfaceHolder holder, int format, int w, int h) {
    }
}
